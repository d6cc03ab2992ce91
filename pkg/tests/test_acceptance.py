"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line to the terminal (outside
pytest's capture) and then asserts.
"""

import itertools
import math
import time
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from polycob import (
    FixedPointKind,
    LengthVector,
    Pivot,
    bend_action,
    bend_flow,
    build_type1,
    build_type2,
    check_gc,
    classify_fixed,
    cobordism_class,
    diagonals,
    enumerate_admissible,
    is_nonempty,
    is_smooth,
    moment_polygon,
    perturbed_equilateral_check,
    random_polygon,
    so3_equivalent,
    symplectic_toolkit,
    tangent_check,
)

from oracles import (
    naive_admissible,
    naive_is_smooth_vectorized,
    pairwise_vertices,
    pentagon_planes,
    random_rational_vector,
    random_smooth_nonempty,
)

F = Fraction

EXAMPLES = [
    ([1, "1.5", 4, 1, 2], 1),
    (["0.5", 2, 4, 1, 2], 0),
    ([2, "0.5", 4, "0.5", "2.5"], -1),
    ([2, "3.5", 4, 1, 2], -2),
    ([2, "3.5", 4, "3.5", "2.5"], -3),
    ([5, 1, 4, 5, 1], 0),
    ([1, "1.5", "3.5", 3, "3.5"], 0),
]


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}{': ' + detail if detail else ''}")
        return ok
    return emit


def test_ac01_golden_examples(report):
    start = time.perf_counter()
    classes = [cobordism_class(LengthVector(r)) for r, _ in EXAMPLES]
    elapsed = time.perf_counter() - start
    got = [c.coefficient for c in classes]
    want = [c for _, c in EXAMPLES]
    ok = (got == want
          and classes[5].histogram == {}
          and classes[6].histogram == {1: 1, 2: 2, 3: 1}
          and elapsed < 1.0)
    report("AC1 golden classes", ok, f"coefficients {got}, {elapsed:.3f} s")
    assert got == want
    assert classes[5].family_size == 0 and classes[5].is_null
    assert classes[6].histogram == {1: 1, 2: 2, 3: 1}
    assert elapsed < 1.0


def test_ac02_equilateral_limit(report):
    got, want, t21 = [], [], None
    for m in range(1, 11):
        n = 2 * m + 1
        start = time.perf_counter()
        got.append(perturbed_equilateral_check(n, F(1, 1000)).coefficient)
        if n == 21:
            t21 = time.perf_counter() - start
        want.append((-1) ** (m + 1) * comb(2 * m - 1, m))
    ok = got == want and t21 < 5.0
    report("AC2 equilateral limit n=3..21", ok, f"n=21 in {t21:.3f} s")
    assert got == want
    assert t21 < 5.0


def test_ac03_even_n_null(report):
    rng = np.random.default_rng(303)
    results = []
    for i in range(100):
        n = (4, 6, 8)[i % 3]
        results.append(cobordism_class(LengthVector(random_smooth_nonempty(rng, n))).is_null)
    report("AC3 even n is null", all(results), f"{sum(results)}/100")
    assert all(results)


def _coefficients(r, orders):
    values = set()
    for order in orders:
        p = r.permuted(order)
        for i, j in itertools.combinations(range(1, r.n + 1), 2):
            if p[i - 1] != p[j - 1]:
                values.add(cobordism_class(p, Pivot(i, j)).coefficient)
    return values


def test_ac04_permutation_pivot_invariance(report):
    rng = np.random.default_rng(404)
    bad = 0
    for _ in range(20):
        r = LengthVector(random_smooth_nonempty(rng, 5))
        bad += len(_coefficients(r, itertools.permutations(range(5)))) != 1
    for n in (7, 9):
        for _ in range(10):
            r = LengthVector(random_smooth_nonempty(rng, n))
            orders = [rng.permutation(n).tolist() for _ in range(50)]
            bad += len(_coefficients(r, orders)) != 1
    report("AC4 permutation and pivot invariance", bad == 0, f"{40 - bad}/40 vectors constant")
    assert bad == 0


def test_ac05_oracle_equivalence(report):
    rng = np.random.default_rng(505)
    enum_bad = 0
    for _ in range(50):
        r = random_rational_vector(rng, int(rng.integers(3, 13)))
        enum_bad += enumerate_admissible(LengthVector(r)).index_lists() != naive_admissible(r)
    smooth_bad, walls = 0, 0
    for i in range(50):
        n = int(rng.integers(3, 19))
        # small integers land on walls often, rationals mostly do not
        r = ([int(x) for x in rng.integers(1, 8, size=n)] if i % 2
             else random_rational_vector(rng, n))
        expected = naive_is_smooth_vectorized(r)
        walls += not expected
        smooth_bad += is_smooth(LengthVector(r)) != expected
    ok = enum_bad == 0 and smooth_bad == 0 and walls > 0
    report("AC5 oracle equivalence", ok,
           f"enumeration mismatches {enum_bad}, smoothness mismatches {smooth_bad}, walls seen {walls}")
    assert enum_bad == 0 and smooth_bad == 0
    assert walls > 0


def test_ac06_bending_dynamics(report):
    rng = np.random.default_rng(606)
    worst_period = worst_conserve = 0.0
    gc_ok = True
    for i in range(100):
        n = 5 if i % 2 == 0 else 6
        r = LengthVector(random_smooth_nonempty(rng, n))
        P = random_polygon(r, rng)
        k = int(rng.integers(1, n - 2))
        ells = np.array([d for _, d in diagonals(P)])
        period = 2 * math.pi / ells[k - 1]
        worst_period = max(worst_period, float(np.max(np.abs(bend_flow(P, k, period).edges - P.edges))))
        for s in range(64):
            Q = bend_flow(P, k, period * s / 64)
            drift = max(
                float(np.max(np.abs(Q.side_lengths - P.side_lengths))),
                Q.closure_residual,
                float(np.max(np.abs(np.array([d for _, d in diagonals(Q)]) - ells))),
            )
            worst_conserve = max(worst_conserve, drift)
            gc_ok &= check_gc(Q)
    ok = worst_period <= 1e-9 and worst_conserve <= 1e-9 and gc_ok
    report("AC6 bending dynamics", ok,
           f"period residual {worst_period:.1e}, conservation drift {worst_conserve:.1e}, GC {gc_ok}")
    assert worst_period <= 1e-9
    assert worst_conserve <= 1e-9
    assert gc_ok


def test_ac07_fixed_points(report):
    rng = np.random.default_rng(707)
    round_trip = True
    worst_fixed = 0.0
    type2_ok = True
    count1 = count2 = 0
    for raw, _ in EXAMPLES:
        r = LengthVector(raw)
        n = r.n
        for s in enumerate_admissible(r):
            P = build_type1(r, s)
            kind, found = classify_fixed(P)
            round_trip &= kind is FixedPointKind.TYPE_I and found == s
            for theta in (0.1, 1.0, math.pi, 5.0):
                worst_fixed = max(worst_fixed, float(np.max(np.abs(bend_action(P, n - 3, theta).edges - P.edges))))
            count1 += 1
        for parallel in (True, False):
            merged = r[-2] + r[-1] if parallel else abs(r[-2] - r[-1])
            if not is_nonempty(LengthVector(list(r.entries[:-2]) + [merged])):
                continue
            P = build_type2(r, parallel, rng)
            count2 += 1
            for theta in (math.pi / 7, 1.0, 3.0):
                type2_ok &= so3_equivalent(P, bend_action(P, n - 3, theta), 1e-9)
    ok = round_trip and worst_fixed <= 1e-12 and type2_ok
    report("AC7 fixed points", ok,
           f"{count1} type I (max motion {worst_fixed:.1e}), {count2} type II")
    assert round_trip
    assert worst_fixed <= 1e-12
    assert type2_ok


def test_ac08_symplectic_identities(report):
    rng = np.random.default_rng(808)
    worst = {"J^2": 0.0, "antisym": 0.0, "omega=gJ": 0.0, "tangent": 0.0}
    for _ in range(100):
        P = random_polygon(LengthVector(random_smooth_nonempty(rng, 5)), rng)
        tk = symplectic_toolkit(P)
        u, v = tk.random_tangent(rng), tk.random_tangent(rng)
        assert tangent_check(P, u) and tangent_check(P, v)
        worst["J^2"] = max(worst["J^2"], float(np.max(np.abs(tk.Jop(tk.Jop(v)) + v))))
        worst["antisym"] = max(worst["antisym"], abs(tk.omega(u, v) + tk.omega(v, u)), abs(tk.omega(u, u)))
        worst["omega=gJ"] = max(worst["omega=gJ"], abs(tk.omega(u, v) - tk.inner(u, tk.Jop(v))))
        worst["tangent"] = max(worst["tangent"], 0.0 if tangent_check(P, tk.Jop(u)) else 1.0)
    ok = all(x <= 1e-9 for x in worst.values())
    report("AC8 symplectic identities", ok, ", ".join(f"{k} {x:.1e}" for k, x in worst.items()))
    assert ok


def _interior_points(vertices, rng, count):
    # strictly positive rational barycentric weights
    for _ in range(count):
        w = [F(int(x), 1) for x in rng.integers(1, 1000, size=len(vertices))]
        total = sum(w)
        yield (sum(wi * v[0] for wi, v in zip(w, vertices)) / total,
               sum(wi * v[1] for wi, v in zip(w, vertices)) / total)


def test_ac09_polytope(report):
    rng = np.random.default_rng(909)
    ex1 = moment_polygon(LengthVector([1, "1.5", 4, 1, 2]))
    ex3 = moment_polygon(LengthVector([2, "0.5", 4, "0.5", "2.5"]))
    want1 = {(F(1), F(3)), (F(5, 2), F(3)), (F(5, 2), F(3, 2))}
    want3 = {(F(3, 2), F(5, 2)), (F(3, 2), F(3)), (F(5, 2), F(3)), (F(5, 2), F(2)), (F(2), F(2))}
    oracle1 = pairwise_vertices(pentagon_planes([1, 1.5, 4, 1, 2]))
    oracle3 = pairwise_vertices(pentagon_planes([2, 0.5, 4, 0.5, 2.5]))
    vertices_ok = (set(ex1.vertices) == want1 == set(oracle1) and len(ex1.vertices) == 3
                   and set(ex3.vertices) == want3 == set(oracle3) and len(ex3.vertices) == 5)
    inside = all(
        all(h.value(p) <= 0 for h in poly.planes)
        for poly in (ex1, ex3)
        for p in _interior_points(poly.vertices, rng, 1000)
    )
    report("AC9 pentagon polytopes", vertices_ok and inside,
           f"{len(ex1.vertices)} and {len(ex3.vertices)} vertices, 2000 interior points checked")
    assert vertices_ok
    assert inside


def test_ac10_performance(report):
    rng = np.random.default_rng(1010)
    # 29 odd integers and one even: every signed sum is odd, so never zero
    entries = [2 * int(x) + 1 for x in rng.integers(100, 5000, size=29)] + [2 * int(rng.integers(100, 5000))]
    r = LengthVector(entries)
    assert is_nonempty(r)
    start = time.perf_counter()
    single = cobordism_class(r, threads=1)
    t1 = time.perf_counter() - start
    start = time.perf_counter()
    multi = cobordism_class(r, threads=8)
    t8 = time.perf_counter() - start
    same = single == multi
    ok = t1 < 10.0 and t8 < 3.0 and same
    report("AC10 n=30 performance", ok,
           f"coefficient {single.coefficient}, 1 thread {t1:.3f} s, 8 threads {t8:.3f} s, identical {same}")
    assert same
    assert t1 < 10.0
    assert t8 < 3.0
