"""Rewrite ALP constraints so every coefficient and constant is one of 0, 1, -1, K, -K.

Three passes, each introducing auxiliary variables defined by equalities:

1. ``clear_denominators`` multiplies each constraint by a positive polynomial so
   all coefficients become integer polynomials in K (valid past a threshold).
2. ``lower_degrees`` splits polynomial coefficients into monomials and lowers
   K^d, d >= 2, by chains w = K*v, leaving only coefficients a*K^e with e <= 1.
3. ``expand_magnitudes`` writes |a| >= 2 in unary through copies z = v, and
   moves constants outside the alphabet onto a pinned unit variable u = 1.

Every auxiliary is a function of the original variables, so the projection of
the solution set onto the original variables is unchanged.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .alp_model import (
    ALPInstance,
    Constraint,
    LinearForm,
    UNIT_ALPHABET,
    validate,
)
from .alp_simplex import feasible_at, lp_vertex_at
from .kfield import ZERO, Poly, RatFunc, as_ratfunc, cauchy_bound, eval_at, poly_gcd

SIZE_CONSTANT = 10


class NormalizationError(ValueError):
    pass


@dataclass
class NormalizationResult:
    instance: ALPInstance
    provenance: dict[str, int]
    unit_var: str | None = None
    threshold: Fraction = Fraction(0)

    @property
    def auxiliaries(self) -> list[str]:
        return list(self.provenance)


# -- pass 1 ------------------------------------------------------------------


def _poly_lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def clear_denominators(inst: ALPInstance) -> tuple[ALPInstance, Fraction]:
    """Scale every constraint by a positive multiplier so coefficients are integer polynomials.

    Returns the new instance and a threshold past which every multiplier used is
    positive, so relation directions are preserved for all larger K.
    """
    threshold = Fraction(0)
    out = []
    for c in inst.all_constraints():
        vals = [*c.lhs.coefficients(), c.lhs.constant, *c.rhs.coefficients(), c.rhs.constant]
        den = Poly((1,))
        for v in vals:
            den = _poly_lcm(den, v.den)
        threshold = max(threshold, cauchy_bound(den))
        mult = RatFunc(den)
        scaled = [v * mult for v in vals]
        int_den = 1
        for v in scaled:
            for coef in v.num.coeffs:
                int_den = lcm(int_den, coef.denominator)
        mult = mult * int_den
        if mult == 1:
            out.append(c)
        else:
            out.append(Constraint(c.lhs.scale(mult), c.rel, c.rhs.scale(mult), c.group))
    cleared = ALPInstance(
        inst.variables, tuple(out), inst.objective_scale, inst.objective_terms, {}
    )
    return cleared, threshold


def _check_integer_poly(f: RatFunc, where: str):
    if not f.is_polynomial() or any(c.denominator != 1 for c in f.num.coeffs):
        raise NormalizationError(
            f"{where}: coefficient {f} is not an integer polynomial in K; "
            "run clear_denominators() on the instance first"
        )


# -- shared machinery --------------------------------------------------------


class _Rewriter:
    def __init__(self, taken: Sequence[str], start: int = 0):
        self.taken = set(taken)
        self.counter = start
        self.provenance: dict[str, int] = {}
        self.new_vars: list[str] = []
        self.unit_var: str | None = None
        self.power_cache: dict[tuple[str, int], str] = {}
        self.source = 0

    def fresh(self) -> str:
        while True:
            name = f"_n{self.counter}"
            self.counter += 1
            if name not in self.taken:
                break
        self.taken.add(name)
        self.new_vars.append(name)
        self.provenance[name] = self.source
        return name

    def unit(self) -> str:
        if self.unit_var is None:
            self.unit_var = self.fresh()
        return self.unit_var

    def unit_constraint(self) -> Constraint:
        return Constraint(LinearForm.var(self.unit_var), "eq", LinearForm.const(1))


def _define(name: str, form: LinearForm) -> Constraint:
    return Constraint(LinearForm.var(name), "eq", form)


def _monomials(p: Poly) -> list[tuple[int, Fraction]]:
    return [(d, a) for d, a in enumerate(p.coeffs) if a]


def _monomial(a, d: int) -> RatFunc:
    return RatFunc.poly([0] * d + [a])


# -- pass 2 ------------------------------------------------------------------


def _lower_term(rw: _Rewriter, c: Poly, v: str) -> tuple[list[tuple[RatFunc, str]], list[Constraint]]:
    """Pieces (coeff, var) with coeff = a*K^e, e <= 1, summing to c*v, plus raw definitions."""
    monos = _monomials(c)
    if len(monos) == 1:
        d, a = monos[0]
        if d <= 1:
            return [(_monomial(a, d), v)], []
        # a K^d v = (a K^{d-1}) * w with w = K v
        key = (v, 1)
        defs = []
        if key not in rw.power_cache:
            w = rw.fresh()
            rw.power_cache[key] = w
            defs.append(_define(w, LinearForm({v: _monomial(1, 1)})))
        pieces, more = _lower_term(rw, Poly([0] * (d - 1) + [a]), rw.power_cache[key])
        return pieces, defs + more
    low = monos[0][0]
    if low >= 1:
        # factor K^low out: c v = K^low * y0 with y0 = (c / K^low) v
        y0 = rw.fresh()
        rest = Poly(c.coeffs[low:])
        pieces, more = _lower_term(rw, Poly([0] * low + [1]), y0)
        return pieces, [_define(y0, LinearForm({v: RatFunc(rest)}))] + more
    pieces, defs = [], []
    for d, a in reversed(monos):
        y = rw.fresh()
        pieces.append((RatFunc.poly([1]), y))
        defs.append(_define(y, LinearForm({v: _monomial(a, d)})))
    return pieces, defs


def _lower_form(rw: _Rewriter, form: LinearForm) -> tuple[LinearForm, list[Constraint]]:
    terms: dict[str, RatFunc] = {}
    defs: list[Constraint] = []
    for v, c in form.terms.items():
        pieces, more = _lower_term(rw, c.num, v)
        for coef, var in pieces:
            terms[var] = terms.get(var, ZERO) + coef
        defs += more
    const = form.constant
    if const.num.degree >= 2:
        pieces, more = _lower_term(rw, const.num, rw.unit())
        for coef, var in pieces:
            terms[var] = terms.get(var, ZERO) + coef
        defs += more
        const = ZERO
    return LinearForm(terms, const), defs


def _lower_constraint(rw: _Rewriter, c: Constraint) -> list[Constraint]:
    lhs, d1 = _lower_form(rw, c.lhs)
    rhs, d2 = _lower_form(rw, c.rhs)
    out = [Constraint(lhs, c.rel, rhs, c.group)]
    for d in d1 + d2:
        out += _lower_constraint(rw, d)
    return out


def lower_degrees(constraints: Sequence[Constraint], taken: Sequence[str] = ()) -> list[Constraint]:
    """Pass 2 on its own: every coefficient left is a*K^e with e <= 1."""
    rw = _Rewriter(_names(constraints, taken))
    out = []
    for i, c in enumerate(constraints):
        rw.source = i
        out += _lower_constraint(rw, c)
    if rw.unit_var is not None:
        out.append(rw.unit_constraint())
    return out


def _names(constraints: Sequence[Constraint], taken: Sequence[str]) -> set[str]:
    names = set(taken)
    for c in constraints:
        names |= c.variables()
    return names


# -- pass 3 ------------------------------------------------------------------


def _expand_form(rw: _Rewriter, form: LinearForm) -> tuple[LinearForm, list[Constraint]]:
    terms: dict[str, RatFunc] = {}
    copies: list[Constraint] = []
    items: list[tuple[str | None, RatFunc]] = list(form.terms.items())
    const = form.constant
    if const not in UNIT_ALPHABET:
        items.append((None, const))
        const = ZERO
    for v, c in items:
        if v is None:
            v = rw.unit()
        if c in UNIT_ALPHABET:
            terms[v] = terms.get(v, ZERO) + c
            continue
        # unary: c v = sum of +-1 / +-K pieces, each on its own copy of v
        for d, a in _monomials(c.num):
            if d > 1:
                raise NormalizationError(f"coefficient {c} still has degree {d}")
            unit = _monomial(1 if a > 0 else -1, d)
            for _ in range(abs(int(a))):
                z = rw.fresh()
                terms[z] = unit
                copies.append(Constraint(LinearForm.var(v), "eq", LinearForm.var(z)))
    return LinearForm(terms, const), copies


def _expand_constraint(rw: _Rewriter, c: Constraint) -> list[Constraint]:
    lhs, c1 = _expand_form(rw, c.lhs)
    rhs, c2 = _expand_form(rw, c.rhs)
    return [Constraint(lhs, c.rel, rhs, c.group)] + c1 + c2


def expand_magnitudes(constraints: Sequence[Constraint], taken: Sequence[str] = ()) -> list[Constraint]:
    """Pass 3 on its own; input coefficients must already be a*K^e with e <= 1."""
    rw = _Rewriter(_names(constraints, taken))
    out = []
    for i, c in enumerate(constraints):
        rw.source = i
        out += _expand_constraint(rw, c)
    if rw.unit_var is not None:
        out.append(rw.unit_constraint())
    return out


# -- driver -------------------------------------------------------------------


def normalize(inst: ALPInstance) -> NormalizationResult:
    """Rewrite constraints into the coefficient alphabet {0, 1, -1, K, -K}.

    Coefficients must already be integer polynomials in K; see
    ``clear_denominators`` for the pre-pass that gets them there.
    """
    problems = validate(inst)
    if problems:
        raise NormalizationError("invalid instance: " + "; ".join(problems))
    cons = inst.all_constraints()
    for i, c in enumerate(cons):
        for form in (c.lhs, c.rhs):
            for f in form.coefficients() + [form.constant]:
                _check_integer_poly(f, f"constraint {i}")
    rw = _Rewriter(inst.variables)
    out = []
    for i, c in enumerate(cons):
        rw.source = i
        for lowered in _lower_constraint(rw, c):
            out += _expand_constraint(rw, lowered)
    if rw.unit_var is not None:
        out.append(rw.unit_constraint())
    result = ALPInstance(
        tuple(inst.variables) + tuple(rw.new_vars),
        tuple(out),
        inst.objective_scale,
        inst.objective_terms,
        {},
    )
    return NormalizationResult(result, dict(rw.provenance), rw.unit_var)


def normalize_any(inst: ALPInstance) -> NormalizationResult:
    """``clear_denominators`` followed by ``normalize``; the threshold is carried along."""
    cleared, threshold = clear_denominators(inst)
    res = normalize(cleared)
    res.threshold = threshold
    return res


def size_bound(inst: ALPInstance, constant: int = SIZE_CONSTANT) -> int:
    """Upper bound on the normalized constraint count.

    constant * (#constraints) * (1 + max degree) * (1 + max integer magnitude),
    where degree and magnitude range over every constraint coefficient and constant.
    """
    cons = inst.all_constraints()
    deg, mag = 0, 0
    for c in cons:
        for form in (c.lhs, c.rhs):
            for f in form.coefficients() + [form.constant]:
                if f.num.coeffs:
                    deg = max(deg, len(f.num.coeffs) - 1)
                    mag = max(mag, max(abs(x) for x in f.num.coeffs))
    return constant * max(len(cons), 1) * (1 + deg) * (1 + int(mag))


# -- equivalence check ----------------------------------------------------------


def check_equivalence(
    a: ALPInstance,
    b: ALPInstance,
    mapping: Mapping[str, str] | None = None,
    k_samples: Sequence = (1000,),
    points: Sequence[Mapping[str, object]] = (),
    n_random: int = 3,
    seed: int = 0,
) -> bool:
    """Sampled check that b's solution set projects onto a's at each K = k.

    ``mapping`` sends each variable of ``a`` to the variable of ``b`` carrying it
    (identity by default).  At every k: the given points and a few random
    vertices of ``a`` must extend to feasible points of ``b``, and random
    vertices of ``b`` must project to feasible points of ``a``.
    """
    if mapping is None:
        mapping = {v: v for v in a.variables}
    missing = [v for v in a.variables if v not in mapping or mapping[v] not in b.variables]
    if missing:
        raise ValueError(f"dimension mismatch: no image in b for {missing}")
    rng = random.Random(seed)
    a_cons = a.all_constraints()
    for k in k_samples:
        k = Fraction(k)
        sols = [
            {v: eval_at(as_ratfunc(val), k) for v, val in p.items()} for p in points
        ]
        for _ in range(n_random):
            cost = {v: Fraction(rng.randint(-5, 5)) for v in a.variables}
            vert = lp_vertex_at(a, k, cost)
            if vert is not None:
                sols.append(vert)
        a_feasible = feasible_at(a, k)
        if a_feasible != feasible_at(b, k):
            return False
        for p in sols:
            if not all(c.holds_at(p, k) for c in a_cons):
                return False
            pins = [
                Constraint(LinearForm.var(mapping[v]), "eq", LinearForm.const(p[v]))
                for v in a.variables
            ]
            if not feasible_at(b, k, pins):
                return False
        for _ in range(n_random):
            cost = {v: Fraction(rng.randint(-5, 5)) for v in b.variables}
            vert = lp_vertex_at(b, k, cost)
            if vert is None:
                continue
            proj = {v: vert[mapping[v]] for v in a.variables}
            if not all(c.holds_at(proj, k) for c in a_cons):
                return False
    return True
