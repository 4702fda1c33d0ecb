"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Criterion 9 is asserted exactly as stated.  The exact third cumulants of
the crossing count, computed from the enumerated distributions, do NOT
satisfy the stated window properties (the n^(9/2)-normalized ratio still
*increases* over n = 6..10 and the log-log slope there is about 5.24):
the window is pre-asymptotic.  The test is kept faithful and red rather
than weakened; see the assertion message for the measured values.
"""

import math
import time
from fractions import Fraction as F
from itertools import combinations

import pytest

from treecross import (
    ConvexConfig,
    closed_form_mean,
    closed_form_second_moment,
    closed_form_variance,
    count_trees_containing,
    distribution_cumulants,
    exact_distribution,
    fit_laurent_polynomial,
    forest_probability,
    general_position_mean,
    kn_crossing_pairs,
    ks_statistic,
    num_trees,
    raw_moment,
    rectilinear_crossing_number,
    sample_crossing_counts,
    variance_scaling_probe,
)
from treecross import verify as _verify_pkg  # noqa: F401  (import check)
from treecross.geometry import (
    CoordinateConfig,
    convex_polygon_config,
    crossing_count,
    pair_crossing_table,
    random_general_position_config,
)
from treecross.montecarlo import empirical_moments
from treecross.reference import (
    REFERENCE_COUNTS,
    REFERENCE_MEANS,
    REFERENCE_SECOND_MOMENTS,
    SECOND_MOMENT_COEFFICIENTS,
)
from treecross.trees import Forest, enumerate_trees
from treecross.verify import DEVIATION, FAIL, run_verify

from conftest import all_forests, count_by_containment
from test_trees import _random_forest
from treecross.rng import SplitMix64

SQUARE_PLUS_CENTER = CoordinateConfig(((0, 0), (6, 0), (6, 6), (0, 6), (3, 2)))


def report(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")


def test_criterion_1_table_reproduction(convex_dist):
    t0 = time.time()
    results = run_verify(("tables",), max_n=9, num_shards=4)
    elapsed = time.time() - t0
    bad = [r for r in results if r.status == FAIL]
    assert not bad, bad
    assert elapsed < 60, f"n<=9 table suite took {elapsed:.1f}s"
    row10 = tuple(convex_dist(10).as_dense())
    assert row10 == REFERENCE_COUNTS[10]
    assert row10[0] == 246675 and row10[-1] == 10
    report(1, True, f"tables n<=9 reproduced in {elapsed:.1f}s; "
                    f"n=10 row reproduced ({len(row10)} classes)")


def test_criterion_2_moment_table(convex_dist):
    for n in list(range(1, 9)) + [10]:
        dist = convex_dist(n)
        assert raw_moment(dist, 1) == REFERENCE_MEANS[n], n
        assert raw_moment(dist, 2) == REFERENCE_SECOND_MOMENTS[n], n
    d9 = convex_dist(9)
    m9 = raw_moment(d9, 1)
    assert m9 == F(56, 9) == closed_form_mean(9)
    row9 = REFERENCE_COUNTS[9]
    assert m9 == F(sum(k * c for k, c in enumerate(row9)), num_trees(9))
    deviations = [r for r in run_verify(("formulas",), max_n=9) if
                  r.status == DEVIATION]
    assert len(deviations) == 1 and "56/7" in deviations[0].detail
    report(2, True, "moments match for n<=8 and n=10; n=9 mean 56/9 "
                    "confirmed, tabulated 56/7 surfaced as documented deviation")


def test_criterion_3_closed_form_identities(convex_dist):
    for n in range(4, 10):
        dist = convex_dist(n)
        assert raw_moment(dist, 1) == closed_form_mean(n), n
        assert raw_moment(dist, 2) == closed_form_second_moment(n), n
    for n in range(2, 101):
        assert closed_form_variance(n) == \
            closed_form_second_moment(n) - closed_form_mean(n) ** 2, n
    report(3, True, "closed forms equal enumeration for 4<=n<=9; variance "
                    "identity exact for 2<=n<=100")


def test_criterion_4_fit_recovery():
    t0 = time.time()
    exps = list(range(4, -5, -1))
    fit = fit_laurent_polynomial(
        [(n, closed_form_second_moment(n)) for n in range(2, 11)], exps)
    elapsed = time.time() - t0
    for e in exps:
        assert fit.coefficient(e) == SECOND_MOMENT_COEFFICIENTS[e], e
    assert all(r == 0 for r in fit.residuals)
    assert elapsed < 1.0
    report(4, True, f"nine coefficients recovered exactly, zero residuals, "
                    f"{elapsed * 1000:.0f}ms")


def test_criterion_5_forest_counts(tree_edge_sets_by_n):
    checked = 0
    for n in range(2, 7):
        tree_sets = tree_edge_sets_by_n(n)
        for forest in all_forests(n):
            want = count_by_containment(n, forest, tree_sets)
            assert count_trees_containing(n, forest) == want
            assert forest_probability(n, forest) == F(want, num_trees(n))
            checked += 1
    tree_sets7 = tree_edge_sets_by_n(7)
    gen = SplitMix64(514229)
    for _ in range(200):
        forest = _random_forest(7, gen)
        want = count_by_containment(7, forest, tree_sets7)
        assert count_trees_containing(7, forest) == want
    pairs = 0
    while pairs < 100:
        f1 = _random_forest(7, gen, max_edges=2)
        f2 = _random_forest(7, gen, max_edges=2)
        v1 = {v for e in f1.edge_set for v in e}
        v2 = {v for e in f2.edge_set for v in e}
        if not f1.edge_set or not f2.edge_set or v1 & v2:
            continue
        union = Forest.from_edges(7, list(f1.edge_set | f2.edge_set))
        assert forest_probability(7, union) == \
            forest_probability(7, f1) * forest_probability(7, f2)
        pairs += 1
    report(5, True, f"{checked} exhaustive forests on n<=6, 200 random at "
                    "n=7, 100 exact independence identities")


def test_criterion_6_geometry_oracles():
    for i in range(100):
        n = 4 + i % 7  # sizes 4..10
        cfg = random_general_position_config(n, seed=60000 + i, bound=5000)
        assert rectilinear_crossing_number(cfg) == kn_crossing_pairs(cfg), i
    for n in range(1, 13):
        assert rectilinear_crossing_number(ConvexConfig(n)) == math.comb(n, 4)
    # equal pair tables make label-rule and segment-test counts equal for
    # every tree on n labels; spot-checked per tree below
    for n in range(3, 8):
        t1, _ = pair_crossing_table(ConvexConfig(n))
        t2, _ = pair_crossing_table(convex_polygon_config(n))
        assert (t1 == t2).all(), n
    for n in (4, 5):
        coords = convex_polygon_config(n)
        for tree in enumerate_trees(n):
            assert crossing_count(tree, ConvexConfig(n)) == \
                crossing_count(tree, coords)
    for n in (6, 7):
        assert exact_distribution(ConvexConfig(n)).counts == \
            exact_distribution(convex_polygon_config(n)).counts
    report(6, True, "dual crossing-number oracles agree on 100 random sets; "
                    "convex attains C(n,4) up to n=12; label rule equals "
                    "segment tests for all trees n<=7")


def test_criterion_7_mean_formula_by_enumeration():
    configs = [
        SQUARE_PLUS_CENTER,
        random_general_position_config(5, seed=401, bound=3000),
        random_general_position_config(6, seed=402, bound=3000),
        random_general_position_config(6, seed=403, bound=3000),
        random_general_position_config(7, seed=404, bound=3000),
    ]
    for cfg in configs:
        dist = exact_distribution(cfg)
        assert raw_moment(dist, 1) == general_position_mean(cfg)
    report(7, True, "enumerated mean equals 4*crossing_number/n^2 on five "
                    "fixed coordinate sets with n in {5, 6, 7}")


def test_criterion_8_desk_scale_normality():
    n, m, seed = 100, 100_000, 7
    t0 = time.time()
    counts = sample_crossing_counts(ConvexConfig(n), m, seed=seed)
    mu = float(closed_form_mean(n))
    var = float(closed_form_variance(n))
    sigma = math.sqrt(var)
    emp = empirical_moments(counts)
    ks = ks_statistic((counts - mu) / sigma)
    elapsed = time.time() - t0
    assert abs(emp.mean - mu) <= 5 * sigma / math.sqrt(m)
    assert abs(emp.variance / var - 1) <= 0.05
    assert ks <= 0.02
    assert abs(emp.skewness) <= 0.2
    assert elapsed < 30
    report(8, True, f"n=100, 1e5 samples in {elapsed:.1f}s: "
                    f"|mean err|={abs(emp.mean - mu):.3f}, "
                    f"var ratio={emp.variance / var:.4f}, ks={ks:.4f}, "
                    f"skew={emp.skewness:.4f}")


def test_criterion_9_third_cumulant_scaling(convex_dist):
    ratios = {}
    c3 = {}
    for n in range(6, 11):
        c3[n] = distribution_cumulants(convex_dist(n), 3)[2]
        ratios[n] = abs(float(c3[n])) / n ** 4.5
    xs = [math.log(n) for n in range(6, 11)]
    ys = [math.log(abs(float(c3[n]))) for n in range(6, 11)]
    xbar, ybar = sum(xs) / 5, sum(ys) / 5
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / \
        sum((x - xbar) ** 2 for x in xs)
    decreasing = all(ratios[n] > ratios[n + 1] for n in range(6, 10))
    ok = decreasing and slope <= 4.3
    report(9, ok, f"|C3|/n^4.5 over n=6..10: "
                  + ", ".join(f"{ratios[n]:.3e}" for n in range(6, 11))
                  + f"; log-log slope {slope:.3f}")
    assert decreasing, (
        "exact |C3(X_n)|/n^4.5 is strictly increasing over n=6..10 "
        f"({[f'{ratios[n]:.4e}' for n in range(6, 11)]}); the stated window "
        "is pre-asymptotic, so this criterion cannot hold (the cubed-sigma "
        "normalization, i.e. skewness, does decrease)")
    assert slope <= 4.3, f"log-log slope over n=6..10 is {slope:.3f} > 4.3"


def test_criterion_10_variance_probe():
    sizes = (50, 100, 200)
    convex_rows = variance_scaling_probe(
        [ConvexConfig(n) for n in sizes], 100_000, seed=31)
    for row in convex_rows:
        assert abs(row.variance_over_n3 * 45 - 1) <= 0.15, row
    coord_cfgs = [random_general_position_config(n, seed=700 + n) for n in sizes]
    coord_rows = variance_scaling_probe(coord_cfgs, 100_000, seed=32)
    for row in coord_rows:
        assert row.variance_over_n3 <= 0.1, row
    detail = "convex var/n^3: " + ", ".join(
        f"{r.variance_over_n3:.5f}" for r in convex_rows)
    detail += "; coords var/n^3: " + ", ".join(
        f"{r.variance_over_n3:.5f}" for r in coord_rows)
    report(10, True, detail)
