"""Exact moments, cumulants, closed forms, and the rational fit."""

from fractions import Fraction as F

import pytest

from treecross import (
    ConvexConfig,
    GuardError,
    SingularSystemError,
    closed_form_mean,
    closed_form_second_moment,
    closed_form_variance,
    cumulant_scaling_report,
    distribution_cumulants,
    exact_distribution,
    fit_laurent_polynomial,
    general_position_mean,
    moments_to_cumulants,
    raw_moment,
    set_partitions,
)
from treecross.geometry import CoordinateConfig, random_general_position_config
from treecross.reference import SECOND_MOMENT_COEFFICIENTS
from treecross.stats import rationals_csv

TRIANGLE_PLUS_CENTER = CoordinateConfig(((0, 0), (10, 0), (0, 10), (2, 2)))
SQUARE_PLUS_CENTER = CoordinateConfig(((0, 0), (6, 0), (6, 6), (0, 6), (3, 2)))


def _pmf_moments(pmf: dict, k_max: int) -> list[F]:
    """Raw moments of a finite rational pmf; oracle for cumulant properties."""
    total = sum(pmf.values())
    assert total == 1
    return [sum(F(v) ** j * p for v, p in pmf.items()) for j in range(1, k_max + 1)]


class TestMoments:
    def test_table_values_n5(self, convex_dist):
        dist = convex_dist(5)
        assert raw_moment(dist, 1) == F(4, 5)
        assert raw_moment(dist, 2) == F(34, 25)

    def test_zeroth_moment_is_one(self, convex_dist):
        assert raw_moment(convex_dist(6), 0) == 1

    def test_negative_order_rejected(self, convex_dist):
        with pytest.raises(ValueError):
            raw_moment(convex_dist(4), -1)


class TestSetPartitions:
    @pytest.mark.parametrize("k,bell", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_bell_counts(self, k, bell):
        parts = set_partitions(k)
        assert len(parts) == bell
        assert len(set(tuple(sorted(p.blocks)) for p in parts)) == bell

    def test_blocks_partition_ground_set(self):
        for p in set_partitions(4):
            flat = sorted(x for b in p.blocks for x in b)
            assert flat == [1, 2, 3, 4]

    def test_guard(self):
        with pytest.raises(GuardError):
            set_partitions(9)


class TestCumulants:
    def test_fair_coin(self):
        assert moments_to_cumulants([F(1, 2), F(1, 2)]) == [F(1, 2), F(1, 4)]

    def test_bernoulli_third_cumulant(self):
        # C3 = p(1-p)(1-2p)
        for p in (F(1, 2), F(1, 3), F(2, 7)):
            cums = moments_to_cumulants([p, p, p])
            assert cums[2] == p * (1 - p) * (1 - 2 * p)
        assert moments_to_cumulants([F(1, 2)] * 3)[2] == 0

    def test_convex_n5_cumulants(self, convex_dist):
        dist = convex_dist(5)
        cums = distribution_cumulants(dist, 3)
        assert cums[0] == F(4, 5)
        assert cums[1] == F(18, 25)
        assert cums[1] == raw_moment(dist, 2) - raw_moment(dist, 1) ** 2
        assert cums[2] == F(12, 25)  # third central moment, frozen

    def test_guard(self):
        with pytest.raises(GuardError):
            moments_to_cumulants([F(1)] * 9)

    def test_shift_invariance(self):
        # C_k(Z + c) == C_k(Z) for k >= 2
        pmf = {0: F(1, 6), 2: F(1, 2), 5: F(1, 3)}
        shifted = {v + 7: p for v, p in pmf.items()}
        base = moments_to_cumulants(_pmf_moments(pmf, 4))
        moved = moments_to_cumulants(_pmf_moments(shifted, 4))
        assert moved[0] == base[0] + 7
        assert moved[1:] == base[1:]

    def test_homogeneity(self):
        # C_k(lambda Z) == lambda^k C_k(Z)
        pmf = {1: F(1, 4), 3: F(1, 4), 4: F(1, 2)}
        lam = F(-3, 2)
        scaled = {lam * v: p for v, p in pmf.items()}
        base = moments_to_cumulants(_pmf_moments(pmf, 4))
        got = moments_to_cumulants(_pmf_moments(scaled, 4))
        for k, (b, g) in enumerate(zip(base, got), start=1):
            assert g == lam ** k * b

    def test_variance_additive_for_independent_sum(self):
        # mixed cumulants of independent variables vanish, so C2 adds
        pmf_a = {0: F(1, 3), 2: F(2, 3)}
        pmf_b = {1: F(1, 2), 4: F(1, 2)}
        conv: dict = {}
        for va, pa in pmf_a.items():
            for vb, pb in pmf_b.items():
                conv[va + vb] = conv.get(va + vb, F(0)) + pa * pb
        ca = moments_to_cumulants(_pmf_moments(pmf_a, 2))
        cb = moments_to_cumulants(_pmf_moments(pmf_b, 2))
        cs = moments_to_cumulants(_pmf_moments(conv, 2))
        assert cs[1] == ca[1] + cb[1]
        assert cs[0] == ca[0] + cb[0]


class TestClosedForms:
    def test_mean_values(self):
        assert closed_form_mean(4) == F(1, 4)
        assert closed_form_mean(10) == F(42, 5)
        assert closed_form_mean(3) == 0
        assert closed_form_mean(1) == 0

    def test_second_moment_values(self):
        assert closed_form_second_moment(5) == F(34, 25)
        assert closed_form_second_moment(8) == F(12789, 512)
        assert closed_form_second_moment(10) == F(42063, 500)
        assert closed_form_second_moment(2) == 0

    def test_variance_values(self):
        assert closed_form_variance(5) == F(18, 25)
        assert closed_form_variance(4) == F(3, 16)
        assert closed_form_variance(8) == F(2989, 512)

    @pytest.mark.parametrize("n", list(range(2, 101)))
    def test_variance_identity(self, n):
        assert closed_form_variance(n) == \
            closed_form_second_moment(n) - closed_form_mean(n) ** 2

    def test_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            closed_form_second_moment(0)
        with pytest.raises(ZeroDivisionError):
            closed_form_variance(0)

    @pytest.mark.parametrize("n", range(4, 9))
    def test_match_enumeration(self, n, convex_dist):
        dist = convex_dist(n)
        assert raw_moment(dist, 1) == closed_form_mean(n)
        assert raw_moment(dist, 2) == closed_form_second_moment(n)


class TestLaurentFit:
    def test_recovers_second_moment_formula(self):
        exps = list(range(4, -5, -1))
        fit = fit_laurent_polynomial(
            [(n, closed_form_second_moment(n)) for n in range(2, 11)], exps)
        for e in exps:
            assert fit.coefficient(e) == SECOND_MOMENT_COEFFICIENTS[e]
        assert all(r == 0 for r in fit.residuals)

    def test_recovers_mean_formula(self):
        # (n-1)(n-2)(n-3)/(6n) expands to n^2/6 - n + 11/6 - 1/n
        fit = fit_laurent_polynomial(
            [(n, closed_form_mean(n)) for n in range(2, 7)],
            [3, 2, 1, 0, -1])
        assert fit.coefficient(3) == 0
        assert fit.coefficient(2) == F(1, 6)
        assert fit.coefficient(1) == -1
        assert fit.coefficient(0) == F(11, 6)
        assert fit.coefficient(-1) == -1
        assert all(r == 0 for r in fit.residuals)

    def test_constant_data(self):
        fit = fit_laurent_polynomial([(1, F(7)), (2, F(7)), (3, F(7))], [0, 1, 2])
        assert fit.coefficient(0) == 7
        assert fit.coefficient(1) == 0
        assert fit.coefficient(2) == 0

    def test_duplicate_n_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            fit_laurent_polynomial([(2, F(1)), (2, F(2))], [0, 1])

    def test_singular_system(self):
        with pytest.raises(SingularSystemError):
            fit_laurent_polynomial([(2, F(1)), (3, F(2))], [1, 1])

    def test_count_mismatch(self):
        with pytest.raises(ValueError):
            fit_laurent_polynomial([(2, F(1))], [0, 1])


class TestGeneralPositionMean:
    @pytest.mark.parametrize("n", [4, 5, 8, 12])
    def test_convex_equals_closed_form(self, n):
        assert general_position_mean(ConvexConfig(n)) == closed_form_mean(n)

    def test_examples(self):
        assert general_position_mean(TRIANGLE_PLUS_CENTER) == 0
        assert general_position_mean(SQUARE_PLUS_CENTER) == F(12, 25)

    @pytest.mark.parametrize("seed,n", [(301, 5), (302, 6), (303, 7)])
    def test_matches_enumeration(self, seed, n):
        config = random_general_position_config(n, seed=seed, bound=2000)
        dist = exact_distribution(config)
        assert raw_moment(dist, 1) == general_position_mean(config)


class TestScalingReport:
    def test_first_two_columns_are_the_closed_forms(self):
        report = cumulant_scaling_report(4, 8, 3)
        for row in report.rows:
            assert row.cumulants[0] == closed_form_mean(row.n)
            assert row.cumulants[1] == closed_form_variance(row.n)

    def test_third_cumulants_frozen(self):
        # exact third cumulants computed independently from the fixture
        # distributions via the partition formula
        expected = {5: F(12, 25), 6: F(161, 108), 7: F(174, 49),
                    8: F(117669, 16384)}
        report = cumulant_scaling_report(5, 8, 3)
        got = {row.n: row.cumulants[2] for row in report.rows}
        assert got == expected

    def test_normalization_and_slopes(self):
        report = cumulant_scaling_report(5, 7, 2)
        for row in report.rows:
            assert row.normalized[0] == pytest.approx(
                abs(float(row.cumulants[0])) / row.n ** 1.5)
        assert len(report.slopes) == 2
        assert all(s is not None for s in report.slopes)

    def test_only_convex_supported(self):
        with pytest.raises(ValueError):
            cumulant_scaling_report(4, 6, 2, config_kind="coordinates")


def test_rationals_csv_format():
    text = rationals_csv([("m1_n5", F(4, 5)), ("c2_n5", F(18, 25))])
    assert text == "name,numerator,denominator\nm1_n5,4,5\nc2_n5,18,25\n"
