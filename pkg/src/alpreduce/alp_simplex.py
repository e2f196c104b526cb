"""Steady-state feasibility of an ALP by exact phase-1 simplex over Q(K).

The same tableau code runs over plain rationals (K instantiated at a number) and
over Q(K) with the eventual order.  In Q(K) mode every sign the algorithm looks
at is logged together with its sign threshold; the maximum of those thresholds
is a K0 past which a finite-K run makes the identical pivot sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import gmpy2

from .alp_model import ALPInstance, Constraint
from .kfield import RatFunc, asymptotic_sign, eval_at, sign_threshold


class PivotLimitExceeded(RuntimeError):
    pass


class _RationalOrder:
    one = gmpy2.mpq(1)

    def sign(self, v) -> int:
        return (v > 0) - (v < 0)


class _AsymptoticOrder:
    """Eventual sign in Q(K), remembering how large K must be for it to hold."""

    one = Fraction(1)

    def __init__(self):
        self.threshold = Fraction(0)
        self.consulted = 0

    def sign(self, v) -> int:
        self.consulted += 1
        if isinstance(v, RatFunc):
            if v.is_zero():
                return 0
            if not v.is_constant():
                t = sign_threshold(v)
                if t > self.threshold:
                    self.threshold = t
            return asymptotic_sign(v)
        return (v > 0) - (v < 0)

    def note(self, v):
        if isinstance(v, RatFunc) and not v.is_zero() and not v.is_constant():
            t = sign_threshold(v)
            if t > self.threshold:
                self.threshold = t


def _demote(v):
    if isinstance(v, RatFunc) and v.is_constant():
        return v.constant_value()
    return v


@dataclass
class StandardForm:
    """Rows of ``A z = b, z >= 0`` built from free variables split as v = v+ - v-."""

    columns: list[str]
    rows: list[dict[int, object]]
    rhs: list[object]
    var_columns: dict[str, tuple[int, int]]


def _at(k) -> Callable:
    k = Fraction(k)
    return lambda a: gmpy2.mpq(eval_at(a, k))


def standard_form(
    variables: Sequence[str],
    constraints: Sequence[Constraint],
    coeff: Callable = _demote,
    one=Fraction(1),
) -> StandardForm:
    columns: list[str] = []
    var_columns = {}
    for v in variables:
        var_columns[v] = (len(columns), len(columns) + 1)
        columns += [v, f"{v}~neg"]
    rows, rhs = [], []
    for i, c in enumerate(constraints):
        diff = c.difference()
        row: dict[int, object] = {}
        for v, a in diff.terms.items():
            a = coeff(a)
            if not a:
                continue
            pos, neg = var_columns[v]
            row[pos] = a
            row[neg] = -a
        if c.rel != "eq":
            row[len(columns)] = one if c.rel == "le" else -one
            columns.append(f"~s{i}")
        rows.append(row)
        rhs.append(-coeff(diff.constant))
    return StandardForm(columns, rows, rhs, var_columns)


class Tableau:
    """Dense-in-rows, sparse-in-columns simplex tableau with Bland's rule."""

    def __init__(
        self, sf: StandardForm, order, max_pivots: int | None = None, keep_artificials: bool = True
    ):
        self.order = order
        one = order.one
        self.sf = sf
        self.n_struct = len(sf.columns)
        m = len(sf.rows)
        self.flip = []
        self.rows: list[dict[int, object]] = []
        self.b: list[object] = []
        for i, (row, bi) in enumerate(zip(sf.rows, sf.rhs)):
            if order.sign(bi) < 0:
                row = {j: -v for j, v in row.items()}
                bi = -bi
                self.flip.append(-1)
            else:
                row = dict(row)
                self.flip.append(1)
            if keep_artificials:
                row[self.n_struct + i] = one
            self.rows.append(row)
            self.b.append(bi)
        self.n_cols = self.n_struct + m
        self.basis = [self.n_struct + i for i in range(m)]
        # phase-1 objective: minimize the sum of artificials
        d: dict[int, object] = {}
        for row in self.rows:
            for j, v in row.items():
                if j < self.n_struct:
                    d[j] = d.get(j, 0) - v
        self.d = {j: v for j, v in d.items() if v}
        self.z = sum(self.b, 0)
        self.pivots = 0
        self.max_pivots = max_pivots or 50 * (m + self.n_cols) + 1000

    def _pivot(self, r: int, j: int):
        self.pivots += 1
        if self.pivots > self.max_pivots:
            raise PivotLimitExceeded(f"more than {self.max_pivots} pivots")
        prow = self.rows[r]
        inv = prow[j].inverse() if isinstance(prow[j], RatFunc) else self.order.one / prow[j]
        prow = {c: v * inv for c, v in prow.items()}
        prow[j] = self.order.one
        self.rows[r] = prow
        self.b[r] = self.b[r] * inv
        br = self.b[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row.get(j)
            if not f:
                continue
            for c, v in prow.items():
                nv = row.get(c, 0) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
            self.b[i] = self.b[i] - f * br
        f = self.d.get(j)
        if f:
            for c, v in prow.items():
                nv = self.d.get(c, 0) - f * v
                if nv:
                    self.d[c] = nv
                else:
                    self.d.pop(c, None)
            self.z = self.z + f * br
        self.basis[r] = j

    def _entering(self, allowed: int) -> int | None:
        for j in sorted(self.d):
            if j >= allowed:
                break
            if self.order.sign(self.d[j]) < 0:
                return j
        return None

    def _leaving(self, j: int) -> int | None:
        best = None
        best_ratio = None
        for i, row in enumerate(self.rows):
            a = row.get(j)
            if not a or self.order.sign(a) <= 0:
                continue
            ratio = self.b[i] / a
            if best is None:
                best, best_ratio = i, ratio
                continue
            s = self.order.sign(ratio - best_ratio)
            if s < 0 or (s == 0 and self.basis[i] < self.basis[best]):
                best, best_ratio = i, ratio
        return best

    def run(self, allowed: int) -> bool:
        """Iterate to optimality; False when the objective is unbounded below."""
        while True:
            j = self._entering(allowed)
            if j is None:
                return True
            r = self._leaving(j)
            if r is None:
                return False
            self._pivot(r, j)

    def drive_out_artificials(self):
        for r in range(len(self.rows)):
            if self.basis[r] < self.n_struct:
                continue
            for j in sorted(self.rows[r]):
                if j >= self.n_struct:
                    break
                if self.order.sign(self.rows[r][j]) != 0:
                    self._pivot(r, j)
                    break

    def set_objective(self, cost: Mapping[int, object]):
        d = {j: v for j, v in cost.items() if v}
        z = 0
        for r, bc in enumerate(self.basis):
            cb = cost.get(bc)
            if not cb:
                continue
            z = z + cb * self.b[r]
            for c, v in self.rows[r].items():
                nv = d.get(c, 0) - cb * v
                if nv:
                    d[c] = nv
                else:
                    d.pop(c, None)
        self.d, self.z = d, z

    def column_values(self) -> dict[int, object]:
        return {bc: self.b[r] for r, bc in enumerate(self.basis)}

    def point(self) -> dict[str, object]:
        vals = self.column_values()
        return {
            v: _plain(vals.get(pos, 0) - vals.get(neg, 0))
            for v, (pos, neg) in self.sf.var_columns.items()
        }

    def structural_basis(self) -> list[str]:
        return [self.sf.columns[bc] for bc in self.basis if bc < self.n_struct]

    def multipliers(self) -> list[object]:
        """Farkas multipliers y (for the unflipped rows) read off the artificial reduced costs."""
        out = []
        for i, f in enumerate(self.flip):
            y = 1 - self.d.get(self.n_struct + i, 0)
            out.append(y if f > 0 else -y)
        return out


@dataclass
class SteadyStateFeasibility:
    feasible: bool
    threshold: Fraction
    basis: list[str] = field(default_factory=list)
    point: dict[str, object] | None = None
    multipliers: list[object] | None = None
    pivots: int = 0
    phase1_value: object = 0

    def to_dict(self) -> dict:
        from .alp_model import _ratfunc_to_json
        from .kfield import as_ratfunc

        doc = {
            "feasible": self.feasible,
            "K0": str(self.threshold),
            "basis": self.basis,
            "pivots": self.pivots,
        }
        if self.point is not None:
            doc["certificate"] = {
                "point": {v: _ratfunc_to_json(as_ratfunc(x)) for v, x in self.point.items()}
            }
        if self.multipliers is not None:
            doc["certificate"] = {
                "multipliers": [_ratfunc_to_json(as_ratfunc(y)) for y in self.multipliers]
            }
        return doc


@dataclass
class FiniteFeasibility:
    feasible: bool
    k: Fraction
    point: dict[str, Fraction] | None = None
    pivots: int = 0


def _plain(v):
    if isinstance(v, RatFunc):
        return v
    return Fraction(int(v.numerator), int(v.denominator))


def _phase1(sf: StandardForm, order, keep_artificials: bool = True) -> Tableau:
    t = Tableau(sf, order, keep_artificials=keep_artificials)
    t.run(allowed=t.n_struct)
    return t


def phase1_feasible(inst: ALPInstance) -> SteadyStateFeasibility:
    """Decide feasibility of the constraints for all sufficiently large K."""
    cons = inst.all_constraints()
    order = _AsymptoticOrder()
    for c in cons:
        for form in (c.lhs, c.rhs):
            for a in form.coefficients() + [form.constant]:
                order.note(a)
    sf = standard_form(inst.variables, cons)
    t = _phase1(sf, order)
    if t.z:
        order.sign(t.z)
        return SteadyStateFeasibility(
            False, order.threshold, multipliers=t.multipliers(), pivots=t.pivots, phase1_value=t.z
        )
    t.drive_out_artificials()
    return SteadyStateFeasibility(
        True, order.threshold, t.structural_basis(), t.point(), pivots=t.pivots
    )


def eval_lp_at(inst: ALPInstance, k) -> FiniteFeasibility:
    """Run the identical phase-1 simplex with K replaced by the rational k."""
    k = Fraction(k)
    cons = inst.all_constraints()
    order = _RationalOrder()
    sf = standard_form(inst.variables, cons, coeff=_at(k), one=order.one)
    t = _phase1(sf, order)
    if t.z:
        return FiniteFeasibility(False, k, pivots=t.pivots)
    t.drive_out_artificials()
    return FiniteFeasibility(True, k, t.point(), t.pivots)


def lp_vertex_at(
    inst: ALPInstance,
    k,
    cost: Mapping[str, Fraction],
    extra: Sequence[Constraint] = (),
) -> dict[str, Fraction] | None:
    """A vertex minimizing ``cost`` at K = k, or None if infeasible or unbounded."""
    k = Fraction(k)
    cons = inst.all_constraints() + list(extra)
    order = _RationalOrder()
    sf = standard_form(inst.variables, cons, coeff=_at(k), one=order.one)
    t = _phase1(sf, order, keep_artificials=False)
    if t.z:
        return None
    t.drive_out_artificials()
    col_cost = {}
    for v, c in cost.items():
        if c:
            pos, neg = sf.var_columns[v]
            col_cost[pos] = gmpy2.mpq(c)
            col_cost[neg] = -gmpy2.mpq(c)
    t.set_objective(col_cost)
    if not t.run(allowed=t.n_struct):
        return None
    return t.point()


def feasible_at(inst: ALPInstance, k, extra: Sequence[Constraint] = ()) -> bool:
    k = Fraction(k)
    cons = inst.all_constraints() + list(extra)
    order = _RationalOrder()
    sf = standard_form(inst.variables, cons, coeff=_at(k), one=order.one)
    return not _phase1(sf, order, keep_artificials=False).z


def verify_point(inst: ALPInstance, point: Mapping[str, object]) -> bool:
    """Certificate soundness in Q(K): equalities exactly, inequalities eventually."""
    return all(c.holds_symbolically(point) for c in inst.all_constraints())


def verify_multipliers(inst: ALPInstance, multipliers: Sequence[object]) -> bool:
    """Check a Farkas certificate: y^T A <= 0 on every column and y^T b > 0."""
    order = _AsymptoticOrder()
    sf = standard_form(inst.variables, inst.all_constraints())
    if len(multipliers) != len(sf.rows):
        return False
    col_sum: dict[int, object] = {}
    for y, row in zip(multipliers, sf.rows):
        for j, a in row.items():
            col_sum[j] = col_sum.get(j, 0) + y * a
    if any(order.sign(v) > 0 for v in col_sum.values()):
        return False
    yb = sum((y * b for y, b in zip(multipliers, sf.rhs)), 0)
    return order.sign(yb) > 0
