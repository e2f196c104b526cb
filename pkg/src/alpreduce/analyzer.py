"""Gadget identities, the scaled objective, and the two decision oracles.

The binarity gadget for index i is

    y_i = x/(K+2i-1) + (1-x)/(K+2i),   z_i = 1/(K+2i-x),
    y_i - z_i = x(1-x) / ((K+2i-1)(K+2i)(K+2i-x)),

so K^3 * sum_i (y_i - z_i) tends to sum_i x_i(1-x_i): zero exactly on binary x.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .instance import BinaryLinearSystem, check_assignment
from .kfield import K, ONE, ZERO, RatFunc, compare_asymptotic, limit_at_infinity
from .reducer import extend_assignment, objective_terms


@dataclass(frozen=True)
class OracleCaps:
    binary_enumeration: int = 24
    vertex_enumeration: int = 12


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class GadgetValues:
    y: RatFunc
    z: RatFunc
    i: int

    @property
    def residual(self) -> RatFunc:
        return self.y - self.z


def _check_unit_interval(x: Fraction):
    if not 0 <= x <= 1:
        raise ValueError(f"x = {x} outside [0, 1]")


def gadget_values(x, i: int) -> GadgetValues:
    x = Fraction(x)
    _check_unit_interval(x)
    y = x / (K + (2 * i - 1)) + (1 - x) / (K + 2 * i)
    z = ONE / (K + 2 * i - x)
    return GadgetValues(y, z, i)


def residual_closed_form(x, i: int) -> RatFunc:
    x = Fraction(x)
    return (x * (1 - x)) / ((K + (2 * i - 1)) * (K + 2 * i) * (K + 2 * i - x))


def theorem1_check(i: int, x_samples: Sequence) -> bool:
    """Gadget identity at index i, checked at sample points with K symbolic.

    The cleared residual is a polynomial of degree 2 in x, so agreement at 4 or
    more distinct points proves the identity.  Also requires the residual to
    vanish at exactly the binary samples.
    """
    xs = sorted({Fraction(x) for x in x_samples})
    if len(xs) < 4:
        raise ValueError(f"need at least 4 distinct samples, got {len(xs)}")
    for x in xs:
        g = gadget_values(x, i)
        res = g.residual
        if res != residual_closed_form(x, i):
            return False
        if res.is_zero() != (x in (0, 1)):
            return False
    return True


# -- injectivity of x -> sum x_j/(K+j) ---------------------------------------------


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(row) for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant of a rational matrix: scale rows to integers, then Bareiss."""
    scale = 1
    rows = []
    for row in m:
        row = [Fraction(v) for v in row]
        den = lcm(*(v.denominator for v in row))
        rows.append([int(v * den) for v in row])
        scale *= den
    return Fraction(bareiss_det(rows), scale)


def cauchy_matrix(n: int, k_samples: Sequence) -> list[list[Fraction]]:
    ks = [Fraction(k) for k in k_samples]
    if len(ks) != n:
        raise ValueError(f"need exactly {n} samples, got {len(ks)}")
    if len(set(ks)) != n:
        raise ValueError("samples must be distinct")
    if any(k <= 0 for k in ks):
        raise ValueError("samples must be positive to avoid the poles K = -j")
    return [[1 / (k + j) for j in range(1, n + 1)] for k in ks]


def theorem2_check(n: int, k_samples: Sequence) -> bool:
    """Injectivity of x -> sum_j x_j/(K+j): the sampled Cauchy matrix is nonsingular.

    If sum_j d_j/(K+j) were identically zero, it would vanish at every sample
    k_s, i.e. C d = 0 with C[s][j] = 1/(k_s+j); a nonzero determinant forces d = 0.
    """
    return rational_det(cauchy_matrix(n, k_samples)) != 0


# -- objective -----------------------------------------------------------------


def _assignment(a: Sequence) -> list[Fraction]:
    xs = [Fraction(v) for v in a]
    for x in xs:
        _check_unit_interval(x)
    return xs


def objective_value(n: int, a: Sequence) -> RatFunc:
    """K^3 * sum of the 3N objective terms at x = a, with p, q, r at their pins."""
    xs = _assignment(a)
    if len(xs) != n:
        raise ValueError(f"assignment has length {len(xs)}, expected {n}")
    point = extend_assignment(xs)
    total = ZERO
    for t in objective_terms(n):
        total = total + t.evaluate(point)
    return K**3 * total


def limit_objective_direct(a: Sequence) -> Fraction:
    return sum((x * (1 - x) for x in _assignment(a)), Fraction(0))


def objective_limit(n: int, a: Sequence) -> Fraction:
    """Limit of the scaled objective as K -> infinity, cross-checked against sum x(1-x)."""
    via_field = limit_at_infinity(objective_value(n, a))
    direct = limit_objective_direct(a)
    if via_field != direct:
        raise ArithmeticError(f"limit paths disagree: {via_field} != {direct}")
    return via_field


# -- oracles -------------------------------------------------------------------


def binary_feasibility_oracle(
    sys: BinaryLinearSystem, cap: int = OracleCaps.binary_enumeration
) -> tuple[int, ...] | None:
    """Lexicographically smallest satisfying binary vector, or None."""
    if sys.n > cap:
        raise CapExceeded(f"N = {sys.n} exceeds the enumeration cap {cap}; raise the cap explicitly")
    for b in itertools.product((0, 1), repeat=sys.n):
        if check_assignment(sys, b):
            return b
    return None


@dataclass
class PolytopeResult:
    feasible: bool
    minimum: Fraction | None
    argmin: tuple[Fraction, ...] | None
    vertex_count: int
    min_positive: Fraction | None = None
    vertices: list[tuple[Fraction, ...]] = field(default_factory=list, repr=False)


def fraction_free_solve(rows: list[list[int]], npiv: int) -> tuple[list[list[int]], int] | None:
    """Fraction-free Gauss-Jordan on an integer matrix, pivoting in the first ``npiv`` columns.

    Returns (reduced rows, d) where the first ``npiv`` rows read d*x_k + 0 = tail,
    i.e. the augmented tail of row k holds d times the solution for pivot k.
    Rows past ``npiv`` hold d times the consistency residuals.  None if the
    pivot block has rank below ``npiv``.
    """
    a = [list(r) for r in rows]
    prev = 1
    for k in range(npiv):
        p = next((r for r in range(k, len(a)) if a[r][k] != 0), None)
        if p is None:
            return None
        a[k], a[p] = a[p], a[k]
        piv = a[k]
        pk = piv[k]
        for i in range(len(a)):
            if i == k:
                continue
            row = a[i]
            f = row[k]
            a[i] = [(pk * x - f * y) // prev for x, y in zip(row, piv)]
        prev = pk
    return a, prev


def enumerate_vertices(sys: BinaryLinearSystem) -> list[tuple[Fraction, ...]]:
    """All vertices of {x : Ax = c, 0 <= x <= 1}, exactly, sorted lexicographically.

    A vertex has its fractional coordinates S determined by the equations, so
    A restricted to S has full column rank; the other coordinates sit at 0 or 1.
    For each such S the rest is enumerated over {0,1}^F in integer arithmetic
    scaled by the pivot determinant.
    """
    n, m = sys.n, sys.m
    A = np.array(sys.a, dtype=np.int64)
    cvec = np.array(sys.c, dtype=np.int64)
    found: set[tuple[Fraction, ...]] = set()
    for size in range(0, min(n, m) + 1):
        for S in itertools.combinations(range(n), size):
            F = [j for j in range(n) if j not in S]
            if size:
                # columns: S block | c | F block;  x_S = (c - A_F x_F) solved over the S block
                aug = [[r[j] for j in S] + [ci] + [r[f] for f in F] for r, ci in zip(sys.a, sys.c)]
                solved = fraction_free_solve(aug, size)
                if solved is None:
                    continue
                red, d = solved
                x0 = np.array([red[k][size] for k in range(size)], dtype=np.int64)
                B = np.array([[red[k][size + 1 + t] for k in range(size)] for t in range(len(F))],
                             dtype=np.int64).reshape(len(F), size)
            else:
                d = 1
                x0 = np.zeros(0, dtype=np.int64)
                B = np.zeros((len(F), 0), dtype=np.int64)
            XF = np.array(list(itertools.product((0, 1), repeat=len(F))), dtype=np.int64).reshape(
                2 ** len(F), len(F)
            )
            XS = x0[None, :] - XF @ B  # d * x_S
            if d < 0:
                XS, d = -XS, -d
            ok = np.all((XS >= 0) & (XS <= d), axis=1)
            full = np.zeros((XF.shape[0], n), dtype=np.int64)
            if size:
                full[:, list(S)] = XS
            if F:
                full[:, F] = XF * d
            ok &= np.all(full @ A.T == d * cvec[None, :], axis=1)
            for row in full[ok]:
                found.add(tuple(Fraction(int(v), d) for v in row))
    return sorted(found)


def polytope_min_oracle(
    sys: BinaryLinearSystem, cap: int = OracleCaps.vertex_enumeration
) -> PolytopeResult:
    """Minimum of the concave sum x_i(1-x_i) over {Ax = c, 0 <= x <= 1} via its vertices."""
    if sys.n > cap:
        raise CapExceeded(f"N = {sys.n} exceeds the vertex-enumeration cap {cap}")
    verts = enumerate_vertices(sys)
    if not verts:
        return PolytopeResult(False, None, None, 0)
    values = [(limit_objective_direct(v), v) for v in verts]
    best = min(values)
    positives = [val for val, _ in values if val > 0]
    return PolytopeResult(
        True, best[0], best[1], len(verts), min(positives) if positives else None, verts
    )


@dataclass
class DecisionReport:
    verdict: bool
    binary_feasible: bool
    witness: tuple[int, ...] | None
    polytope_feasible: bool
    polytope_min: Fraction | None
    argmin: tuple[Fraction, ...] | None
    vertex_count: int
    oracles_agree: bool
    min_positive_vertex_value: Fraction | None = None
    objective_sign_at_argmin: int | None = None

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "binary_feasible": self.binary_feasible,
            "witness": list(self.witness) if self.witness is not None else None,
            "polytope_feasible": self.polytope_feasible,
            "polytope_min": None if self.polytope_min is None else _pq(self.polytope_min),
            "argmin": None if self.argmin is None else [_pq(v) for v in self.argmin],
            "vertex_count": self.vertex_count,
            "oracles_agree": self.oracles_agree,
            "min_positive_vertex_value": (
                None if self.min_positive_vertex_value is None else _pq(self.min_positive_vertex_value)
            ),
            "objective_sign_at_argmin": self.objective_sign_at_argmin,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)


def _pq(x: Fraction) -> str:
    return str(Fraction(x))


def decide(sys: BinaryLinearSystem, caps: OracleCaps = OracleCaps()) -> DecisionReport:
    """Run both oracles; the ALP verdict is (polytope nonempty and minimum 0)."""
    witness = binary_feasibility_oracle(sys, caps.binary_enumeration)
    poly = polytope_min_oracle(sys, caps.vertex_enumeration)
    binary_feasible = witness is not None
    verdict = poly.feasible and poly.minimum == 0
    sign_at_argmin = None
    if poly.argmin is not None:
        sign_at_argmin = compare_asymptotic(objective_value(sys.n, poly.argmin), 0)
    return DecisionReport(
        verdict=verdict,
        binary_feasible=binary_feasible,
        witness=witness,
        polytope_feasible=poly.feasible,
        polytope_min=poly.minimum,
        argmin=poly.argmin,
        vertex_count=poly.vertex_count,
        oracles_agree=binary_feasible == verdict,
        min_positive_vertex_value=poly.min_positive,
        objective_sign_at_argmin=sign_at_argmin,
    )


def verify_gadgets(max_i: int = 50, max_n: int = 50) -> list[tuple[str, bool]]:
    """Gadget identity for i <= max_i and injectivity for N <= max_n."""
    samples = [0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 4)]
    out = [(f"gadget i={i}", theorem1_check(i, samples)) for i in range(1, max_i + 1)]
    out += [(f"injectivity N={n}", theorem2_check(n, range(1, n + 1))) for n in range(1, max_n + 1)]
    return out


__all__ = [
    "CapExceeded",
    "DecisionReport",
    "GadgetValues",
    "OracleCaps",
    "PolytopeResult",
    "binary_feasibility_oracle",
    "decide",
    "enumerate_vertices",
    "gadget_values",
    "objective_limit",
    "objective_value",
    "polytope_min_oracle",
    "residual_closed_form",
    "theorem1_check",
    "theorem2_check",
    "verify_gadgets",
]
