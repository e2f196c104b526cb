"""End-to-end acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v -s``.
"""

import random
import time
from fractions import Fraction

import pytest

from alpreduce.alp_model import UNIT_ALPHABET, coefficient_alphabet
from alpreduce.alp_simplex import eval_lp_at, phase1_feasible, verify_multipliers, verify_point
from alpreduce.analyzer import (
    decide, objective_limit, objective_value, theorem1_check, theorem2_check,
)
from alpreduce.instance import generate_planted, generate_random
from alpreduce.kfield import ONE, ZERO, Poly, RatFunc, compare_asymptotic, eval_at, sign_threshold
from alpreduce.normalizer import check_equivalence, normalize, size_bound
from alpreduce.reducer import count_profile, extend_assignment, instance_profile, reduce

import test_normalizer as examples

pytestmark = pytest.mark.slow


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")
    return emit


def test_criterion_1_gadget_identity(report):
    samples = [0, 1, Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 4)]
    t = time.perf_counter()
    failed = [i for i in range(1, 51) if not theorem1_check(i, samples)]
    dt = time.perf_counter() - t
    ok = not failed and dt < 10
    report(1, ok, f"gadget identity i=1..50, 6 samples, {len(failed)} failures, {dt:.2f}s (< 10s)")
    assert ok


def test_criterion_2_uniqueness(report):
    t = time.perf_counter()
    failed = [n for n in range(1, 51) if not theorem2_check(n, range(1, n + 1))]
    dt = time.perf_counter() - t
    ok = not failed and dt < 30
    report(2, ok, f"Cauchy determinants N=1..50 nonzero, {len(failed)} failures, {dt:.2f}s (< 30s)")
    assert ok


def test_criterion_3_reduction_counts(report):
    rng = random.Random(3)
    bad = []
    for t in range(100):
        n, m = rng.randint(1, 10), rng.randint(1, 6)
        s = generate_random(n, m, rng.randrange(10**9))
        got = instance_profile(reduce(s))
        want = count_profile(s)
        if (got.variables, got.constraints, got.objective_terms) != (4 * n, m + 4 * n, 3 * n):
            bad.append((n, m))
        if got != want:
            bad.append((n, m))
    report(3, not bad, f"100 systems match (4N, M+4N, 3N); mismatches: {bad}")
    assert not bad


def test_criterion_4_main_equivalence(report):
    rng = random.Random(4)
    t = time.perf_counter()
    disagree = []
    counts = {True: 0, False: 0}
    for j in range(200):
        n, m, seed = rng.randint(1, 10), rng.randint(1, 6), rng.randrange(10**9)
        s = generate_planted(n, m, seed)[0] if j < 100 else generate_random(n, m, seed)
        rep = decide(s)
        counts[rep.verdict] += 1
        if not rep.oracles_agree or (j < 100 and not rep.verdict):
            disagree.append((j, n, m, seed))
        if rep.verdict != (rep.polytope_min == 0):
            disagree.append((j, n, m, seed))
    dt = time.perf_counter() - t
    ok = not disagree and dt < 300
    report(
        4, ok,
        f"200 instances (TRUE={counts[True]}, FALSE={counts[False]}), "
        f"{len(disagree)} disagreements, {dt:.1f}s (< 300s)",
    )
    assert ok


def test_criterion_5_nonbinary_positivity(report):
    rng = random.Random(5)
    bad = 0
    for _ in range(1000):
        n = rng.randint(1, 8)
        x = [Fraction(rng.randint(0, 12), 12) for _ in range(n)]
        if all(v in (0, 1) for v in x):
            x[rng.randrange(n)] = Fraction(rng.randint(1, 11), 12)
        v = objective_value(n, x)
        direct = sum(xi * (1 - xi) for xi in x)
        if compare_asymptotic(v, 0) != 1 or objective_limit(n, x) != direct:
            bad += 1
    report(5, bad == 0, f"1000 non-binary assignments positive with limit sum x(1-x); {bad} failures")
    assert bad == 0


def test_criterion_6_normalization(report):
    rng = random.Random(6)
    problems = []
    for j in range(50):
        n, m, seed = rng.randint(1, 6), rng.randint(1, 6), rng.randrange(10**9)
        if j % 2 == 0:
            s, b = generate_planted(n, m, seed)
            points = [extend_assignment(b)]
        else:
            s, points = generate_random(n, m, seed), []
        inst = reduce(s)
        out = normalize(inst).instance
        if not coefficient_alphabet(out) <= UNIT_ALPHABET:
            problems.append((j, "alphabet"))
        if len(out.constraints) > size_bound(inst):
            problems.append((j, "size"))
        if not check_equivalence(inst, out, k_samples=(10**3, 10**6), points=points, seed=j):
            problems.append((j, "equivalence"))
    worked = True
    for example in (
        examples.test_unary_split_of_two_k,
        examples.test_degree_lowering_chain,
        examples.test_degree_lowering_full_normalization_is_equivalent,
    ):
        try:
            example()
        except AssertionError:
            worked = False
            problems.append(example.__name__)
    report(
        6, not problems,
        f"50 normalized instances (alphabet, size bound, equivalence at 1e3/1e6), "
        f"worked rewritings reproduced={worked}; problems: {problems}",
    )
    assert not problems


def test_criterion_7_steady_state(report):
    rng = random.Random(7)
    problems = []
    counts = {True: 0, False: 0}
    for j in range(50):
        n, m, seed = rng.randint(1, 8), rng.randint(1, 6), rng.randrange(10**9)
        s = generate_planted(n, m, seed)[0] if j % 2 == 0 else generate_random(n, m, seed)
        inst = reduce(s)
        res = phase1_feasible(inst)
        counts[res.feasible] += 1
        for k in (10**3, 10**6, res.threshold + 1):
            if eval_lp_at(inst, k).feasible != res.feasible:
                problems.append((j, str(k)))
        if res.feasible and not verify_point(inst, res.point):
            problems.append((j, "point"))
        if not res.feasible and not verify_multipliers(inst, res.multipliers):
            problems.append((j, "farkas"))
    mixed = counts[True] > 0 and counts[False] > 0
    ok = not problems and mixed
    report(
        7, ok,
        f"50 reduced instances (feasible={counts[True]}, infeasible={counts[False]}) agree at "
        f"1e3, 1e6, K0+1 with verified certificates; problems: {problems}",
    )
    assert ok


def _rand_ratfunc(rng):
    def poly():
        deg = rng.randint(0, 6)
        return Poly([Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(deg + 1)])

    den = poly()
    while den.is_zero():
        den = poly()
    return RatFunc(poly(), den)


def test_criterion_8_field(report):
    rng = random.Random(8)
    checks = 0
    failures = []

    def check(name, cond):
        nonlocal checks
        checks += 1
        if not cond:
            failures.append(name)

    while checks < 10_000:
        a, b, c = (_rand_ratfunc(rng) for _ in range(3))
        check("add-comm", a + b == b + a)
        check("mul-comm", a * b == b * a)
        check("add-assoc", (a + b) + c == a + (b + c))
        check("mul-assoc", (a * b) * c == a * (b * c))
        check("distrib", a * (b + c) == a * b + a * c)
        check("neg", a + (-a) == ZERO)
        if not a.is_zero():
            check("inverse", a * a.inverse() == ONE)
        cab = compare_asymptotic(a, b)
        check("antisym", cab == -compare_asymptotic(b, a) and (cab == 0) == (a == b))
        check("translate", compare_asymptotic(a + c, b + c) == cab)
        if compare_asymptotic(c, 0) > 0:
            check("scale", compare_asymptotic(a * c, b * c) == cab)
        if cab <= 0 and compare_asymptotic(b, c) <= 0:
            check("transitive", compare_asymptotic(a, c) <= 0)
        d = a - b
        if not d.is_zero():
            k = sign_threshold(d) + 1
            da, db = eval_at(a, k), eval_at(b, k)
            check("order-vs-eval", (da > db) - (da < db) == cab)
    report(8, not failures, f"{checks} field/order property checks on degree <= 6; failures: {sorted(set(failures))}")
    assert not failures
