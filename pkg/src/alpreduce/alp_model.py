"""Asymptotic linear programs whose objective is a scaled sum of rational linear terms.

Coefficients and constants are elements of Q(K).  The JSON form stores each
rational function as ``{"num": [...], "den": [...]}`` with ascending powers of K
and every coefficient written as a ``"p/q"`` string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .kfield import K, ONE, ZERO, Poly, RatFunc, as_ratfunc, asymptotic_sign, eval_at

RELATIONS = ("eq", "le", "ge")
UNIT_ALPHABET = frozenset({ZERO, ONE, -ONE, K, -K})


class ALPFormatError(ValueError):
    def __init__(self, path: str, msg: str):
        self.path = path
        super().__init__(f"{path}: {msg}")


@dataclass(frozen=True)
class LinearForm:
    terms: Mapping[str, RatFunc] = field(default_factory=dict)
    constant: RatFunc = ZERO

    def __post_init__(self):
        terms = {}
        for v, c in self.terms.items():
            c = as_ratfunc(c)
            if not c.is_zero():
                terms[v] = c
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "constant", as_ratfunc(self.constant))

    @classmethod
    def var(cls, name: str, coeff=1) -> "LinearForm":
        return cls({name: coeff})

    @classmethod
    def const(cls, c) -> "LinearForm":
        return cls({}, c)

    def is_constant(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return set(self.terms)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        terms = dict(self.terms)
        for v, c in other.terms.items():
            terms[v] = terms.get(v, ZERO) + c
        return LinearForm(terms, self.constant + other.constant)

    def __neg__(self) -> "LinearForm":
        return LinearForm({v: -c for v, c in self.terms.items()}, -self.constant)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def scale(self, s) -> "LinearForm":
        s = as_ratfunc(s)
        return LinearForm({v: c * s for v, c in self.terms.items()}, self.constant * s)

    def evaluate(self, values: Mapping[str, object]):
        """Symbolic value: coefficients stay in Q(K), values may be rationals or Q(K)."""
        acc = self.constant
        for v, c in self.terms.items():
            acc = acc + c * as_ratfunc(values[v])
        return acc

    def evaluate_at(self, values: Mapping[str, Fraction], k) -> Fraction:
        """Value with K instantiated at the rational ``k``."""
        acc = eval_at(self.constant, k)
        for v, c in self.terms.items():
            acc += eval_at(c, k) * values[v]
        return acc

    def coefficients(self) -> list[RatFunc]:
        return list(self.terms.values())


@dataclass(frozen=True)
class Constraint:
    lhs: LinearForm
    rel: str
    rhs: LinearForm
    group: str | None = None

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}, got {self.rel!r}")

    def variables(self) -> set[str]:
        return self.lhs.variables() | self.rhs.variables()

    def difference(self) -> LinearForm:
        """lhs - rhs; the constraint reads ``difference rel 0``."""
        return self.lhs - self.rhs

    def is_constant(self) -> bool:
        return self.lhs.is_constant() and self.rhs.is_constant()

    def holds_symbolically(self, values: Mapping[str, object]) -> bool:
        """Equalities must hold exactly in Q(K); inequalities by eventual sign."""
        s = asymptotic_sign(self.difference().evaluate(values))
        return _rel_ok(self.rel, s)

    def holds_at(self, values: Mapping[str, Fraction], k) -> bool:
        d = self.lhs.evaluate_at(values, k) - self.rhs.evaluate_at(values, k)
        return _rel_ok(self.rel, (d > 0) - (d < 0))


def _rel_ok(rel: str, s: int) -> bool:
    if rel == "eq":
        return s == 0
    if rel == "le":
        return s <= 0
    return s >= 0


@dataclass(frozen=True)
class RationalLinearTerm:
    numerator: LinearForm
    denominator: LinearForm
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def variables(self) -> set[str]:
        return self.numerator.variables() | self.denominator.variables()

    def evaluate(self, values: Mapping[str, object]) -> RatFunc:
        return self.sign * (self.numerator.evaluate(values) / self.denominator.evaluate(values))


@dataclass(frozen=True)
class ALPInstance:
    variables: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    objective_scale: RatFunc = ONE
    objective_terms: tuple[RationalLinearTerm, ...] = ()
    var_bounds: Mapping[str, tuple[RatFunc | None, RatFunc | None]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "objective_terms", tuple(self.objective_terms))
        object.__setattr__(self, "objective_scale", as_ratfunc(self.objective_scale))
        bounds = {
            v: tuple(None if b is None else as_ratfunc(b) for b in lohi)
            for v, lohi in self.var_bounds.items()
        }
        object.__setattr__(self, "var_bounds", bounds)

    def bound_constraints(self) -> list[Constraint]:
        """var_bounds expressed as ordinary constraints."""
        out = []
        for v, (lo, hi) in self.var_bounds.items():
            if lo is not None:
                out.append(Constraint(LinearForm.var(v), "ge", LinearForm.const(lo), f"bound:{v}"))
            if hi is not None:
                out.append(Constraint(LinearForm.var(v), "le", LinearForm.const(hi), f"bound:{v}"))
        return out

    def all_constraints(self) -> list[Constraint]:
        return list(self.constraints) + self.bound_constraints()

    def objective_value(self, values: Mapping[str, object]) -> RatFunc:
        total = ZERO
        for t in self.objective_terms:
            total = total + t.evaluate(values)
        return self.objective_scale * total

    def group_count(self) -> int:
        """Constraint count where constraints sharing a group label count once."""
        seen = set()
        count = 0
        for i, c in enumerate(self.constraints):
            key = c.group if c.group is not None else ("#", i)
            if key not in seen:
                seen.add(key)
                count += 1
        return count


def validate(inst: ALPInstance) -> list[str]:
    """Structural violations; an empty list means the instance is well formed."""
    problems = []
    known = set()
    for v in inst.variables:
        if not isinstance(v, str) or not v:
            problems.append(f"variable name {v!r} is empty or not a string")
        elif v in known:
            problems.append(f"variable {v!r} declared twice")
        known.add(v)
    for i, c in enumerate(inst.constraints):
        for v in sorted(c.variables() - known):
            problems.append(f"constraint {i} references unknown variable {v!r}")
    for i, t in enumerate(inst.objective_terms):
        for v in sorted(t.variables() - known):
            problems.append(f"objective term {i} references unknown variable {v!r}")
        if t.denominator.is_constant() and t.denominator.constant.is_zero():
            problems.append(f"objective term {i} has an identically zero denominator")
    for v in sorted(set(inst.var_bounds) - known):
        problems.append(f"bounds given for unknown variable {v!r}")
    if inst.objective_terms and inst.objective_scale.is_zero():
        problems.append("objective_scale is zero")
    return problems


def constant_constraints(inst: ALPInstance) -> list[tuple[int, bool]]:
    """Constraints without variables, as (index, holds for all large K)."""
    out = []
    for i, c in enumerate(inst.constraints):
        if c.is_constant():
            out.append((i, c.holds_symbolically({})))
    return out


def coefficient_alphabet(inst: ALPInstance) -> set[RatFunc]:
    """Distinct coefficients and constants over all constraints (objective excluded)."""
    out: set[RatFunc] = set()
    for c in inst.all_constraints():
        for form in (c.lhs, c.rhs):
            out.update(form.coefficients())
            out.add(form.constant)
    return out


def objective_alphabet(inst: ALPInstance) -> set[RatFunc]:
    """Coefficients and constants inside the objective terms, plus the scale."""
    out: set[RatFunc] = set()
    if inst.objective_terms:
        out.add(inst.objective_scale)
    for t in inst.objective_terms:
        for form in (t.numerator, t.denominator):
            out.update(form.coefficients())
            out.add(form.constant)
    return out


def in_unit_alphabet(values: set[RatFunc]) -> bool:
    return values <= UNIT_ALPHABET


# -- JSON -------------------------------------------------------------------


def _ratfunc_to_json(f: RatFunc) -> dict:
    return {"num": [str(c) for c in f.num.coeffs] or ["0"], "den": [str(c) for c in f.den.coeffs]}


def _form_to_json(form: LinearForm) -> dict:
    return {
        "terms": {v: _ratfunc_to_json(c) for v, c in form.terms.items()},
        "constant": _ratfunc_to_json(form.constant),
    }


def to_dict(inst: ALPInstance) -> dict:
    doc = {
        "variables": list(inst.variables),
        "constraints": [],
        "objective_scale": _ratfunc_to_json(inst.objective_scale),
        "objective_terms": [
            {
                "sign": t.sign,
                "numerator": _form_to_json(t.numerator),
                "denominator": _form_to_json(t.denominator),
            }
            for t in inst.objective_terms
        ],
    }
    for c in inst.constraints:
        entry = {"lhs": _form_to_json(c.lhs), "rel": c.rel, "rhs": _form_to_json(c.rhs)}
        if c.group is not None:
            entry["group"] = c.group
        doc["constraints"].append(entry)
    if inst.var_bounds:
        doc["var_bounds"] = {
            v: [None if b is None else _ratfunc_to_json(b) for b in lohi]
            for v, lohi in inst.var_bounds.items()
        }
    return doc


def serialize(inst: ALPInstance, indent: int | None = 1) -> str:
    problems = validate(inst)
    if problems:
        raise ValueError("refusing to serialize an invalid instance: " + "; ".join(problems))
    return json.dumps(to_dict(inst), indent=indent)


def _need(doc, key: str, path: str, kind=None):
    if not isinstance(doc, dict):
        raise ALPFormatError(path, "expected an object")
    if key not in doc:
        raise ALPFormatError(f"{path}.{key}", "missing field")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise ALPFormatError(f"{path}.{key}", f"expected {kind.__name__}")
    return val


def _coeffs_from_json(seq, path: str) -> Poly:
    if not isinstance(seq, list):
        raise ALPFormatError(path, "expected an array of rationals")
    out = []
    for i, s in enumerate(seq):
        try:
            if isinstance(s, bool) or not isinstance(s, (str, int)):
                raise TypeError
            out.append(Fraction(s))
        except (ValueError, ZeroDivisionError, TypeError):
            raise ALPFormatError(f"{path}[{i}]", f"not an exact rational: {s!r}") from None
    return Poly(out)


def _ratfunc_from_json(doc, path: str) -> RatFunc:
    num = _coeffs_from_json(_need(doc, "num", path), f"{path}.num")
    den = _coeffs_from_json(_need(doc, "den", path), f"{path}.den")
    if den.is_zero():
        raise ALPFormatError(f"{path}.den", "zero denominator")
    return RatFunc(num, den)


def _form_from_json(doc, path: str) -> LinearForm:
    terms = _need(doc, "terms", path, dict)
    const = _ratfunc_from_json(_need(doc, "constant", path), f"{path}.constant")
    return LinearForm(
        {v: _ratfunc_from_json(c, f"{path}.terms.{v}") for v, c in terms.items()}, const
    )


def from_dict(doc) -> ALPInstance:
    variables = _need(doc, "variables", "$", list)
    cons = []
    for i, c in enumerate(_need(doc, "constraints", "$", list)):
        p = f"$.constraints[{i}]"
        rel = _need(c, "rel", p)
        if rel not in RELATIONS:
            raise ALPFormatError(f"{p}.rel", f"unknown relation {rel!r}")
        cons.append(
            Constraint(
                _form_from_json(_need(c, "lhs", p), f"{p}.lhs"),
                rel,
                _form_from_json(_need(c, "rhs", p), f"{p}.rhs"),
                c.get("group"),
            )
        )
    scale = _ratfunc_from_json(_need(doc, "objective_scale", "$"), "$.objective_scale")
    terms = []
    for i, t in enumerate(_need(doc, "objective_terms", "$", list)):
        p = f"$.objective_terms[{i}]"
        sign = _need(t, "sign", p)
        if sign not in (1, -1):
            raise ALPFormatError(f"{p}.sign", "must be 1 or -1")
        terms.append(
            RationalLinearTerm(
                _form_from_json(_need(t, "numerator", p), f"{p}.numerator"),
                _form_from_json(_need(t, "denominator", p), f"{p}.denominator"),
                sign,
            )
        )
    bounds = {}
    for v, lohi in doc.get("var_bounds", {}).items():
        p = f"$.var_bounds.{v}"
        if not isinstance(lohi, list) or len(lohi) != 2:
            raise ALPFormatError(p, "expected [lower, upper]")
        bounds[v] = tuple(
            None if b is None else _ratfunc_from_json(b, f"{p}[{j}]") for j, b in enumerate(lohi)
        )
    return ALPInstance(tuple(variables), tuple(cons), scale, tuple(terms), bounds)


def deserialize(text: str) -> ALPInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ALPFormatError("$", f"invalid JSON: {e}") from None
    return from_dict(doc)
