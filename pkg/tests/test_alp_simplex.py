from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from alpreduce.alp_model import ALPInstance, Constraint, LinearForm
from alpreduce.alp_simplex import (
    eval_lp_at, feasible_at, lp_vertex_at, phase1_feasible, verify_multipliers, verify_point,
)
from alpreduce.analyzer import polytope_min_oracle
from alpreduce.instance import BinaryLinearSystem, generate_planted, generate_random
from alpreduce.kfield import K, RatFunc, eval_at
from alpreduce.reducer import reduce


def form(terms, const=0):
    return LinearForm(dict(terms), const)


def test_pinned_variable():
    inst = ALPInstance(
        ("p1",),
        (
            Constraint(LinearForm.var("p1"), "eq", LinearForm.const(K + 1)),
            Constraint(LinearForm.var("p1"), "ge", LinearForm.const(0)),
        ),
    )
    res = phase1_feasible(inst)
    assert res.feasible
    assert res.point["p1"] == K + 1
    assert verify_point(inst, res.point)


def test_eventually_empty_interval():
    inst = ALPInstance(
        ("x",),
        (
            Constraint(LinearForm.var("x"), "ge", LinearForm.const(0)),
            Constraint(LinearForm.var("x"), "le", LinearForm.const(-K)),
        ),
    )
    res = phase1_feasible(inst)
    assert not res.feasible
    assert verify_multipliers(inst, res.multipliers)
    for k in (10**3, 10**6, res.threshold + 1):
        assert not eval_lp_at(inst, k).feasible
    # below the threshold the finite problem can differ
    assert eval_lp_at(inst, -1).feasible


def test_empty_constraint_list():
    inst = ALPInstance(("x",), ())
    assert phase1_feasible(inst).feasible
    assert eval_lp_at(inst, 5).feasible


def test_threshold_covers_sign_change():
    # x >= K - 50 and x <= 0: feasible only while K <= 50
    inst = ALPInstance(
        ("x",),
        (
            Constraint(LinearForm.var("x"), "ge", LinearForm.const(K - 50)),
            Constraint(LinearForm.var("x"), "le", LinearForm.const(0)),
        ),
    )
    res = phase1_feasible(inst)
    assert not res.feasible
    assert res.threshold >= 50
    assert not eval_lp_at(inst, res.threshold + 1).feasible
    assert eval_lp_at(inst, 10).feasible


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.integers(1, 4), st.integers(0, 10**6), st.booleans())
def test_reduced_matches_polytope_oracle(n, m, seed, planted):
    s = generate_planted(n, m, seed)[0] if planted else generate_random(n, m, seed)
    inst = reduce(s)
    res = phase1_feasible(inst)
    assert res.feasible == polytope_min_oracle(s).feasible
    for k in (10**3, 10**6, res.threshold + 1):
        fin = eval_lp_at(inst, k)
        assert fin.feasible == res.feasible
        if fin.feasible:
            assert all(c.holds_at(fin.point, k) for c in inst.all_constraints())
    if res.feasible:
        assert verify_point(inst, res.point)
        # certificate projects to a point of {Ax = c, 0 <= x <= 1} at a sampled k
        x = [eval_at(res.point[f"x{i}"], 10**6) for i in range(1, n + 1)]
        assert all(0 <= v <= 1 for v in x)
        assert all(sum(a * v for a, v in zip(row, x)) == ci for row, ci in zip(s.a, s.c))
    else:
        assert verify_multipliers(inst, res.multipliers)


@st.composite
def planted_alps(draw):
    """Random constraints with K-dependent coefficients around a planted point."""
    nv = draw(st.integers(1, 3))
    names = [f"v{j}" for j in range(nv)]
    coef = st.builds(lambda a, b: a * K + b, st.integers(-2, 2), st.integers(-3, 3))
    point = {v: draw(coef) for v in names}
    cons = []
    for _ in range(draw(st.integers(1, 4))):
        lhs = LinearForm({v: draw(coef) for v in names})
        val = lhs.evaluate(point)
        rel = draw(st.sampled_from(["eq", "le", "ge"]))
        slack = draw(st.integers(0, 2)) * (K if draw(st.booleans()) else 1)
        rhs = val if rel == "eq" else (val + slack if rel == "le" else val - slack)
        cons.append(Constraint(lhs, rel, LinearForm.const(rhs)))
    return ALPInstance(tuple(names), tuple(cons)), point


@settings(max_examples=60, deadline=None)
@given(planted_alps())
def test_planted_alp_is_feasible(case):
    inst, point = case
    assert verify_point(inst, point)
    res = phase1_feasible(inst)
    assert res.feasible
    assert verify_point(inst, res.point)
    assert eval_lp_at(inst, res.threshold + 1).feasible


@settings(max_examples=60, deadline=None)
@given(planted_alps(), st.integers(1, 3))
def test_cut_off_alp_is_infeasible(case, gap):
    inst, _ = case
    # add v0 >= K^2 + gap and v0 <= K^2: contradictory for every K
    extra = (
        Constraint(LinearForm.var("v0"), "ge", LinearForm.const(K * K + gap)),
        Constraint(LinearForm.var("v0"), "le", LinearForm.const(K * K)),
    )
    bad = ALPInstance(inst.variables, inst.constraints + extra)
    res = phase1_feasible(bad)
    assert not res.feasible
    assert verify_multipliers(bad, res.multipliers)
    for k in (10**3, res.threshold + 1):
        assert not eval_lp_at(bad, k).feasible


def test_lp_vertex_at_minimizes():
    inst = ALPInstance(
        ("x", "y"),
        (
            Constraint(form({"x": 1, "y": 1}), "le", LinearForm.const(K)),
            Constraint(LinearForm.var("x"), "ge", LinearForm.const(0)),
            Constraint(LinearForm.var("y"), "ge", LinearForm.const(0)),
        ),
    )
    v = lp_vertex_at(inst, 10, {"x": Fraction(-1), "y": Fraction(-2)})
    assert v == {"x": 0, "y": 10}
    assert lp_vertex_at(inst, 10, {"x": Fraction(1), "y": Fraction(1)}) == {"x": 0, "y": 0}
    # unbounded direction
    open_inst = ALPInstance(("x",), (Constraint(LinearForm.var("x"), "ge", LinearForm.const(0)),))
    assert lp_vertex_at(open_inst, 10, {"x": Fraction(-1)}) is None


def test_feasible_at_with_extra_rows():
    inst = reduce(BinaryLinearSystem(((1, 1),), (1,)))
    pin = [Constraint(LinearForm.var("x1"), "eq", LinearForm.const(Fraction(1, 3)))]
    assert feasible_at(inst, 1000, pin)
    pin = [Constraint(LinearForm.var("x1"), "eq", LinearForm.const(2))]
    assert not feasible_at(inst, 1000, pin)


def test_json_shape():
    inst = reduce(BinaryLinearSystem(((1, 1),), (1,)))
    doc = phase1_feasible(inst).to_dict()
    assert set(doc) >= {"feasible", "K0", "basis", "certificate"}
    assert isinstance(doc["K0"], str)
