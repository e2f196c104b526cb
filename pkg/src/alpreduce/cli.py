"""Command-line front end.

    alpreduce reduce SYSTEM [-o alp.json]
    alpreduce normalize ALP.json [-o norm.json] [--clear-denominators]
    alpreduce decide SYSTEM
    alpreduce verify-gadgets [--max-i 50] [--max-n 50]
    alpreduce alp-feasible ALP.json [--check-at k,k,...]
    alpreduce gen --n N --m M --seed S [--planted]

Exit codes: 0 success / verdict TRUE, 1 verdict FALSE or a failed check, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import alp_model, analyzer, instance, normalizer, reducer
from .alp_simplex import eval_lp_at, phase1_feasible, verify_point
from .kfield import K, ONE, ZERO, RatFunc

_NAMED = {ZERO: "0", ONE: "1", -ONE: "-1", K: "K", -K: "-K"}
_ORDER = ["0", "1", "-1", "K", "-K"]


def render_alphabet(values: set[RatFunc]) -> str:
    named = [_NAMED[v] for v in values if v in _NAMED]
    other = sorted(str(v) for v in values if v not in _NAMED)
    return "{" + ",".join(sorted(named, key=_ORDER.index) + other) + "}"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise CLIError(f"cannot read {path}: {e.strerror}") from None


class CLIError(Exception):
    pass


def _emit(args, doc: dict, text: str):
    if args.json:
        print(json.dumps(doc, indent=1))
    else:
        print(text)


def cmd_reduce(args) -> int:
    sys_ = instance.parse_system(_read(args.system))
    inst = reducer.reduce(sys_)
    prof = reducer.instance_profile(inst)
    expected = reducer.count_profile(sys_)
    if (prof.variables, prof.constraints, prof.objective_terms) != (
        expected.variables,
        expected.constraints,
        expected.objective_terms,
    ):
        raise CLIError(f"emitted sizes {prof} differ from the closed form {expected}")
    if args.output:
        Path(args.output).write_text(alp_model.serialize(inst))
    _emit(
        args,
        {
            "vars": prof.variables,
            "constraints": prof.constraints,
            "relations": prof.relations,
            "objective_terms": prof.objective_terms,
        },
        prof.line(),
    )
    return 0


def cmd_normalize(args) -> int:
    inst = alp_model.deserialize(_read(args.alp))
    before = alp_model.coefficient_alphabet(inst)
    if args.clear_denominators:
        res = normalizer.normalize_any(inst)
    else:
        res = normalizer.normalize(inst)
    out = res.instance
    after = alp_model.coefficient_alphabet(out)
    if args.output:
        Path(args.output).write_text(alp_model.serialize(out))
        side = Path(args.output).with_suffix(".provenance.json")
        side.write_text(json.dumps(res.provenance, indent=1))
    n_in, n_out = len(inst.all_constraints()), len(out.constraints)
    v_in, v_out = len(inst.variables), len(out.variables)
    doc = {
        "alphabet_before": render_alphabet(before),
        "alphabet_after": render_alphabet(after),
        "objective_alphabet": render_alphabet(alp_model.objective_alphabet(out)),
        "constraints": [n_in, n_out],
        "variables": [v_in, v_out],
        "constraint_blowup": str(Fraction(n_out, max(n_in, 1))),
        "variable_blowup": str(Fraction(v_out, max(v_in, 1))),
        "threshold": str(res.threshold),
    }
    text = "\n".join(
        [
            f"alphabet_before = {doc['alphabet_before']}",
            f"alphabet_after = {doc['alphabet_after']}",
            f"objective_alphabet = {doc['objective_alphabet']}",
            f"constraints {n_in} -> {n_out} (x{float(Fraction(doc['constraint_blowup'])):.2f})",
            f"variables {v_in} -> {v_out} (x{float(Fraction(doc['variable_blowup'])):.2f})",
        ]
    )
    _emit(args, doc, text)
    return 0 if alp_model.in_unit_alphabet(after) else 1


def cmd_decide(args) -> int:
    sys_ = instance.parse_system(_read(args.system))
    caps = analyzer.OracleCaps(args.binary_cap, args.vertex_cap)
    rep = analyzer.decide(sys_, caps)
    doc = rep.to_dict()
    lines = [f"{k}: {v}" for k, v in doc.items()]
    _emit(args, doc, "\n".join(lines))
    return 0 if rep.verdict else 1


def cmd_verify_gadgets(args) -> int:
    results = analyzer.verify_gadgets(args.max_i, args.max_n)
    failed = [name for name, ok in results if not ok]
    doc = {"checks": len(results), "failed": failed}
    text = f"{len(results) - len(failed)}/{len(results)} gadget checks passed"
    if failed:
        text += "\nfailed: " + ", ".join(failed)
    _emit(args, doc, text)
    return 1 if failed else 0


def cmd_alp_feasible(args) -> int:
    inst = alp_model.deserialize(_read(args.alp))
    res = phase1_feasible(inst)
    if args.check_at:
        ks = [Fraction(s) for s in args.check_at.split(",") if s.strip()]
    else:
        ks = [Fraction(10**3), Fraction(10**6), res.threshold + 1]
    checks = {str(k): eval_lp_at(inst, k).feasible for k in ks if k > res.threshold}
    skipped = [str(k) for k in ks if k <= res.threshold]
    agree = all(v == res.feasible for v in checks.values())
    sound = verify_point(inst, res.point) if res.feasible else True
    doc = res.to_dict()
    doc.update({"checks": checks, "skipped_below_K0": skipped, "agree": agree, "certificate_verified": sound})
    text = "\n".join(
        [
            f"feasible: {res.feasible}",
            f"K0: {res.threshold}",
            f"pivots: {res.pivots}",
            *(f"k={k}: feasible={v}" for k, v in checks.items()),
            *(f"k={k}: skipped (not above K0)" for k in skipped),
            f"agree: {agree}",
        ]
    )
    _emit(args, doc, text)
    return 0 if agree and sound else 1


def cmd_gen(args) -> int:
    if args.planted:
        sys_, b = instance.generate_planted(args.n, args.m, args.seed)
        header = f"# planted assignment: {' '.join(map(str, b))}\n"
    else:
        sys_ = instance.generate_random(args.n, args.m, args.seed)
        header = ""
    text = f"# seed {args.seed}\n" + header + sys_.render()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="alpreduce", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", help="binary system -> ALP JSON")
    s.add_argument("system")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("normalize", help="rewrite constraints into {0,1,-1,K,-K}")
    s.add_argument("alp")
    s.add_argument("-o", "--output")
    s.add_argument("--clear-denominators", action="store_true")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("decide", help="run both decision oracles")
    s.add_argument("system")
    s.add_argument("--binary-cap", type=int, default=analyzer.OracleCaps.binary_enumeration)
    s.add_argument("--vertex-cap", type=int, default=analyzer.OracleCaps.vertex_enumeration)
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("verify-gadgets", help="gadget identity and injectivity suites")
    s.add_argument("--max-i", type=int, default=50)
    s.add_argument("--max-n", type=int, default=50)
    s.set_defaults(func=cmd_verify_gadgets)

    s = sub.add_parser("alp-feasible", help="steady-state feasibility with finite-K checks")
    s.add_argument("alp")
    s.add_argument("--check-at", help="comma-separated rationals")
    s.set_defaults(func=cmd_alp_feasible)

    s = sub.add_parser("gen", help="emit a random system file")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--planted", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    # allow --json after the subcommand as well
    argv = list(sys.argv[1:] if argv is None else argv)
    json_flag = "--json" in argv
    argv = [a for a in argv if a != "--json"]
    args = parser.parse_args(argv)
    args.json = json_flag
    try:
        return args.func(args)
    except (CLIError, ValueError, ArithmeticError, RuntimeError) as e:
        print(f"alpreduce: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
