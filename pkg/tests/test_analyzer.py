import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from alpreduce.analyzer import (
    CapExceeded, OracleCaps, binary_feasibility_oracle, cauchy_matrix, decide,
    enumerate_vertices, gadget_values, objective_limit, objective_value,
    polytope_min_oracle, rational_det, residual_closed_form, theorem1_check,
    theorem2_check,
)
from alpreduce.instance import BinaryLinearSystem, check_assignment, generate_planted, generate_random
from alpreduce.kfield import K, ZERO, compare_asymptotic, eval_at

k_sym = sympy.Symbol("k")

ONE_ROW = BinaryLinearSystem(((1, 1),), (1,))
HALF = BinaryLinearSystem(((1, 1), (1, -1)), (1, 0))
EMPTY = BinaryLinearSystem(((1,), (-1,)), (1, 1))
NEGATIVE = BinaryLinearSystem(((1, 1),), (-1,))


def as_sympy(f):
    num = sum(sympy.Rational(c.numerator, c.denominator) * k_sym**d for d, c in enumerate(f.num.coeffs))
    den = sum(sympy.Rational(c.numerator, c.denominator) * k_sym**d for d, c in enumerate(f.den.coeffs))
    return num / den


def same(f, expr):
    return sympy.simplify(as_sympy(f) - expr) == 0


# -- gadget ---------------------------------------------------------------------

def test_gadget_at_zero_and_one():
    g0 = gadget_values(0, 1)
    assert g0.y == g0.z == 1 / (K + 2)
    g1 = gadget_values(1, 1)
    assert g1.y == g1.z == 1 / (K + 1)


def test_gadget_half_residual():
    r = gadget_values(Fraction(1, 2), 1).residual
    expected = Fraction(1, 4) / ((K + 1) * (K + 2) * (K + Fraction(3, 2)))
    assert r == expected
    # oracle: the defining expression, simplified by a CAS
    x = sympy.Rational(1, 2)
    raw = x / (k_sym + 1) + (1 - x) / (k_sym + 2) - 1 / (k_sym + 2 - x)
    assert same(r, raw)
    assert not r.is_zero()


@settings(max_examples=30)
@given(st.integers(1, 60), st.fractions(0, 1, max_denominator=30))
def test_residual_matches_cas(i, x):
    xs = sympy.Rational(x.numerator, x.denominator)
    raw = xs / (k_sym + 2 * i - 1) + (1 - xs) / (k_sym + 2 * i) - 1 / (k_sym + 2 * i - xs)
    assert same(residual_closed_form(x, i), raw)
    assert gadget_values(x, i).residual == residual_closed_form(x, i)


@pytest.mark.parametrize(
    "i, samples",
    [(1, [0, 1, Fraction(1, 2), Fraction(1, 3)]), (7, [0, 1, Fraction(2, 5), Fraction(3, 4)])],
)
def test_identity_check_examples(i, samples):
    assert theorem1_check(i, samples)


def test_identity_check_needs_four_samples():
    with pytest.raises(ValueError):
        theorem1_check(1, [0, 1, Fraction(1, 2), Fraction(1, 2)])


def test_gadget_rejects_out_of_range():
    with pytest.raises(ValueError):
        gadget_values(Fraction(3, 2), 1)


# -- injectivity ----------------------------------------------------------------

def test_injectivity_two_by_two():
    m = cauchy_matrix(2, [1, 2])
    assert m == [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 3), Fraction(1, 4)]]
    assert rational_det(m) == Fraction(1, 72)
    assert theorem2_check(2, [1, 2])


def test_injectivity_single():
    assert cauchy_matrix(1, [10]) == [[Fraction(1, 11)]]
    assert theorem2_check(1, [10])


@pytest.mark.parametrize("n", [3, 5, 8])
def test_cauchy_det_matches_cas(n):
    m = cauchy_matrix(n, range(1, n + 1))
    oracle = sympy.Matrix(n, n, lambda s, j: sympy.Rational(1, s + 1 + j + 1)).det()
    assert rational_det(m) == Fraction(int(oracle.p), int(oracle.q))


@given(st.lists(st.integers(1, 40), min_size=1, max_size=7, unique=True))
def test_cauchy_det_closed_form(ks):
    n = len(ks)
    b = list(range(1, n + 1))
    num = Fraction(1)
    for s, t in itertools.combinations(range(n), 2):
        num *= (ks[t] - ks[s]) * (b[t] - b[s])
    den = Fraction(1)
    for kk in ks:
        for j in b:
            den *= kk + j
    assert rational_det(cauchy_matrix(n, ks)) == num / den


def test_injectivity_errors():
    with pytest.raises(ValueError):
        theorem2_check(2, [1, 1])
    with pytest.raises(ValueError):
        theorem2_check(2, [-1, 3])
    with pytest.raises(ValueError):
        theorem2_check(3, [1, 2])


# -- objective ------------------------------------------------------------------

@given(st.lists(st.integers(0, 1), min_size=1, max_size=6))
def test_objective_zero_on_binary(b):
    assert objective_value(len(b), b) == ZERO
    assert objective_limit(len(b), b) == 0


def test_objective_at_half():
    got = objective_value(1, [Fraction(1, 2)])
    assert got == K**3 * Fraction(1, 4) / ((K + 1) * (K + 2) * (K + Fraction(3, 2)))
    assert objective_limit(1, [Fraction(1, 2)]) == Fraction(1, 4)
    assert objective_limit(2, [Fraction(1, 2)] * 2) == Fraction(1, 2)


@settings(max_examples=30)
@given(st.lists(st.fractions(0, 1, max_denominator=12), min_size=1, max_size=4), st.integers(5, 10**5))
def test_objective_matches_finite_evaluation(x, k):
    # oracle: plug k into the raw sum of the 3N terms with plain fractions
    direct = sum(
        xi / (k + 2 * i - 1) + (1 - xi) / (k + 2 * i) - 1 / (k + 2 * i - xi)
        for i, xi in enumerate(x, start=1)
    )
    assert eval_at(objective_value(len(x), x), k) == Fraction(k) ** 3 * direct


@given(st.lists(st.fractions(0, 1, max_denominator=12), min_size=1, max_size=6))
def test_objective_sign(x):
    v = objective_value(len(x), x)
    binary = all(xi in (0, 1) for xi in x)
    assert compare_asymptotic(v, 0) == (0 if binary else 1)


# -- oracles --------------------------------------------------------------------

def test_binary_oracle_examples():
    assert binary_feasibility_oracle(ONE_ROW) in {(0, 1), (1, 0)}
    assert binary_feasibility_oracle(HALF) is None
    assert binary_feasibility_oracle(NEGATIVE) is None


def test_caps():
    big = generate_random(13, 2, 0)
    with pytest.raises(CapExceeded):
        polytope_min_oracle(big)
    with pytest.raises(CapExceeded):
        binary_feasibility_oracle(big, cap=12)


def test_polytope_examples():
    r = polytope_min_oracle(ONE_ROW)
    assert r.feasible and r.minimum == 0
    assert set(r.vertices) == {(0, 1), (1, 0)}
    r = polytope_min_oracle(HALF)
    assert r.minimum == Fraction(1, 2) and r.argmin == (Fraction(1, 2), Fraction(1, 2))
    r = polytope_min_oracle(EMPTY)
    assert not r.feasible and r.minimum is None


def brute_force_vertices(sys):
    """Every pattern of {0, 1, free} per coordinate, solved exactly by a CAS."""
    n = sys.n
    A = sympy.Matrix(sys.a)
    c = sympy.Matrix(sys.c)
    out = set()
    for pattern in itertools.product((0, 1, None), repeat=n):
        free = [j for j, p in enumerate(pattern) if p is None]
        fixed = sympy.Matrix([p if p is not None else 0 for p in pattern])
        rhs = c - A * fixed
        if free:
            As = A[:, free]
            if As.rank() < len(free):
                continue
            try:
                sol, params = As.gauss_jordan_solve(rhs)
            except ValueError:
                continue
            if params.shape[0]:
                continue
            x = list(fixed)
            for t, j in enumerate(free):
                x[j] = sol[t]
        else:
            if rhs != sympy.zeros(sys.m, 1):
                continue
            x = list(fixed)
        if all(0 <= v <= 1 for v in x):
            out.add(tuple(Fraction(int(sympy.Rational(v).p), int(sympy.Rational(v).q)) for v in x))
    return out


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 10**6))
def test_vertices_match_brute_force(n, m, seed):
    sys = generate_random(n, m, seed)
    assert set(enumerate_vertices(sys)) == brute_force_vertices(sys)


def test_decide_examples():
    s, b = generate_planted(3, 2, 1)
    rep = decide(s)
    assert rep.verdict and rep.binary_feasible and rep.polytope_min == 0 and rep.oracles_agree
    assert check_assignment(s, rep.witness)
    rep = decide(HALF)
    assert not rep.binary_feasible and rep.polytope_min == Fraction(1, 2) and rep.oracles_agree
    assert rep.objective_sign_at_argmin == 1
    rep = decide(EMPTY)
    assert not rep.verdict and not rep.binary_feasible and rep.oracles_agree
    assert rep.to_dict()["polytope_min"] is None


def test_report_strings():
    d = decide(HALF).to_dict()
    assert d["polytope_min"] == "1/2"
    assert decide(ONE_ROW).to_dict()["polytope_min"] == "0"


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(1, 4), st.integers(0, 10**6))
def test_oracles_agree_on_random(n, m, seed):
    assert decide(generate_random(n, m, seed), OracleCaps()).oracles_agree
