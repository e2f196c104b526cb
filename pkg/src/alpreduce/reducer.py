"""Compile a binary linear system into the rational-linear-objective ALP.

For each binary variable b_i the instance carries a real x_i in [0, 1] and three
pinned variables p_i = K+2i-1, q_i = K+2i, r_i = K+2i-x_i.  The objective is

    K^3 * sum_i ( x_i/p_i + (1-x_i)/q_i - 1/r_i )

which is zero exactly on binary x and asymptotically positive elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .alp_model import ALPInstance, Constraint, LinearForm, RationalLinearTerm
from .instance import BinaryLinearSystem
from .kfield import K, RatFunc


@dataclass(frozen=True)
class CountProfile:
    variables: int
    constraints: int
    objective_terms: int
    relations: int | None = None

    def line(self) -> str:
        return (
            f"vars={self.variables} constraints={self.constraints} "
            f"objective_terms={self.objective_terms}"
        )


def names(i: int) -> tuple[str, str, str, str]:
    return f"x{i}", f"p{i}", f"q{i}", f"r{i}"


def reduce(sys: BinaryLinearSystem) -> ALPInstance:
    n = sys.n
    xs = [f"x{i}" for i in range(1, n + 1)]
    variables = (
        xs
        + [f"p{i}" for i in range(1, n + 1)]
        + [f"q{i}" for i in range(1, n + 1)]
        + [f"r{i}" for i in range(1, n + 1)]
    )
    cons = []
    for row_idx, (row, ci) in enumerate(zip(sys.a, sys.c), start=1):
        lhs = LinearForm({x: a for x, a in zip(xs, row) if a})
        cons.append(Constraint(lhs, "eq", LinearForm.const(ci), f"row{row_idx}"))
    for i in range(1, n + 1):
        x, p, q, r = names(i)
        box = f"box{i}"
        cons.append(Constraint(LinearForm.var(x), "ge", LinearForm.const(0), box))
        cons.append(Constraint(LinearForm.var(x), "le", LinearForm.const(1), box))
        cons.append(Constraint(LinearForm.var(p), "eq", LinearForm.const(K + (2 * i - 1)), f"pin_p{i}"))
        cons.append(Constraint(LinearForm.var(q), "eq", LinearForm.const(K + 2 * i), f"pin_q{i}"))
        cons.append(
            Constraint(LinearForm.var(r), "eq", LinearForm({x: -1}, K + 2 * i), f"pin_r{i}")
        )
    return ALPInstance(tuple(variables), tuple(cons), K**3, objective_terms(n))


def objective_terms(n: int) -> tuple[RationalLinearTerm, ...]:
    """The 3N terms +x_i/p_i, +(1-x_i)/q_i, -1/r_i."""
    terms = []
    for i in range(1, n + 1):
        x, p, q, r = names(i)
        terms.append(RationalLinearTerm(LinearForm.var(x), LinearForm.var(p), 1))
        terms.append(RationalLinearTerm(LinearForm({x: -1}, 1), LinearForm.var(q), 1))
        terms.append(RationalLinearTerm(LinearForm.const(1), LinearForm.var(r), -1))
    return tuple(terms)


def count_profile(sys: BinaryLinearSystem) -> CountProfile:
    """Closed-form sizes (4N, M+4N, 3N); the flat relation count is M+5N."""
    n, m = sys.n, sys.m
    return CountProfile(4 * n, m + 4 * n, 3 * n, m + 5 * n)


def instance_profile(inst: ALPInstance) -> CountProfile:
    """Sizes measured on an emitted instance (box pairs count as one group)."""
    return CountProfile(
        len(inst.variables), inst.group_count(), len(inst.objective_terms), len(inst.constraints)
    )


def extend_assignment(x: Sequence) -> dict[str, RatFunc]:
    """Full point of the reduced instance for given x values, with p, q, r at their pins."""
    point: dict[str, RatFunc] = {}
    for i, xi in enumerate(x, start=1):
        xi = RatFunc(Fraction(xi)) if not isinstance(xi, RatFunc) else xi
        xn, p, q, r = names(i)
        point[xn] = xi
        point[p] = K + (2 * i - 1)
        point[q] = K + 2 * i
        point[r] = K + 2 * i - xi
    return point


def extend_assignment_at(x: Sequence, k) -> dict[str, Fraction]:
    k = Fraction(k)
    point = {}
    for i, xi in enumerate(x, start=1):
        xn, p, q, r = names(i)
        point[xn] = Fraction(xi)
        point[p] = k + 2 * i - 1
        point[q] = k + 2 * i
        point[r] = k + 2 * i - Fraction(xi)
    return point


__all__ = [
    "CountProfile",
    "reduce",
    "objective_terms",
    "count_profile",
    "instance_profile",
    "extend_assignment",
    "extend_assignment_at",
]
