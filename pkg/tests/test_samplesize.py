"""Tests for joint-space arithmetic and the chi-squared sample-size machinery."""

import math

import numpy as np
import pytest
from scipy import stats

import msulab.samplesize as samplesize
from msulab import (
    CardinalityProfile,
    InvalidInputError,
    RepresentativenessReport,
    ScanLimitError,
    chi2_critical,
    chi2_statistic,
    extreme_sample,
    extreme_sample_chi2,
    heuristic_sample_size,
    min_representative_m,
    multivariate_cardinality,
    representativeness_report,
)

# Values from standard chi-squared tables (6+ digits), frozen.
CRITICAL_05_7 = 14.06714
CRITICAL_05_11 = 19.6751
NORMAL_975 = 1.959963984540054  # two-sided 5% normal quantile


class TestMultivariateCardinality:
    def test_pair_of_four_valued_attributes(self):
        assert multivariate_cardinality(CardinalityProfile((4, 4), 2)) == 32

    def test_four_binary_attributes(self):
        assert multivariate_cardinality(CardinalityProfile((2, 2, 2, 2), 2)) == 32

    def test_empty_attribute_set(self):
        assert multivariate_cardinality(CardinalityProfile((), 2)) == 2

    def test_constant_variables_flagged(self):
        assert CardinalityProfile((1, 3), 2).has_constant_variables
        assert not CardinalityProfile((2, 3), 2).has_constant_variables


class TestHeuristicSampleSize:
    def test_two_binary_attributes(self):
        assert heuristic_sample_size(CardinalityProfile((2, 2), 2)) == 80

    def test_eight_binary_attributes(self):
        assert heuristic_sample_size(CardinalityProfile((2,) * 8, 2)) == 5120

    def test_identity_factor(self):
        assert heuristic_sample_size(CardinalityProfile((2, 2), 2), factor=1) == 8

    def test_fractional_factor_rounds_up(self):
        assert heuristic_sample_size(CardinalityProfile((2, 2), 2), factor=1.1) == 9

    def test_nonpositive_factor_rejected(self):
        with pytest.raises(InvalidInputError):
            heuristic_sample_size(CardinalityProfile((2, 2), 2), factor=0)


class TestChi2Critical:
    def test_reference_values(self):
        assert chi2_critical(0.05, 7) == pytest.approx(CRITICAL_05_7, abs=1e-3)
        assert chi2_critical(0.05, 11) == pytest.approx(CRITICAL_05_11, abs=1e-3)
        assert chi2_critical(0.05, 1) == pytest.approx(NORMAL_975**2, abs=1e-3)

    def test_agrees_with_quantile_oracle(self):
        for alpha in (0.01, 0.05, 0.2, 0.5, 0.9):
            for df in (1, 3, 7, 20, 100):
                assert chi2_critical(alpha, df) == pytest.approx(
                    stats.chi2.ppf(1 - alpha, df), abs=1e-6
                )

    def test_bad_arguments_rejected(self):
        for alpha, df in ((0.0, 7), (1.0, 7), (-0.1, 7), (0.05, 0)):
            with pytest.raises(InvalidInputError):
                chi2_critical(alpha, df)


class TestExtremeSample:
    def test_exact_division(self):
        assert extreme_sample(98, 8) == [14] * 7 + [0]

    def test_uneven_division(self):
        assert extreme_sample(100, 8) == [15, 15, 14, 14, 14, 14, 14, 0]

    def test_minimal_feasible(self):
        assert extreme_sample(7, 8) == [1] * 7 + [0]

    def test_below_minimum_rejected(self):
        with pytest.raises(InvalidInputError):
            extreme_sample(6, 8)

    def test_sum_and_single_zero(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            k = int(rng.integers(2, 30))
            m = int(rng.integers(k - 1, 5000))
            counts = extreme_sample(m, k)
            assert sum(counts) == m
            assert counts.count(0) == 1
            assert counts[-1] == 0

    def test_weighted_zero_goes_to_least_likely_cell(self):
        counts = extreme_sample(100, 4, probabilities=[0.4, 0.1, 0.3, 0.2])
        assert counts[1] == 0
        assert sum(counts) == 100

    def test_weighted_apportionment_tracks_probabilities(self):
        counts = extreme_sample(90, 4, probabilities=[0.5, 0.25, 0.2, 0.05])
        assert counts[3] == 0
        assert counts == [int(round(90 * p / 0.95)) for p in (0.5, 0.25, 0.2)] + [0]


class TestChi2Statistic:
    def test_published_observed_vector(self):
        assert chi2_statistic([14, 14, 14, 15, 15, 0, 14, 14]) == pytest.approx(14.40, abs=1e-12)

    def test_term_decomposition(self):
        # five cells at 0.18, two at 0.50, the empty cell at its expectation 12.5
        expected = math.fsum([0.18] * 5 + [0.5] * 2 + [12.5])
        assert chi2_statistic([14, 14, 14, 15, 15, 0, 14, 14]) == pytest.approx(expected, abs=1e-12)

    def test_empty_cell_contributes_its_expectation(self):
        # k=2: (0 - m/2)^2 / (m/2) + (m - m/2)^2 / (m/2) = m
        for m in (4, 10, 121):
            assert chi2_statistic([0, m]) == pytest.approx(float(m), abs=1e-12)

    def test_zero_probability_rejected(self):
        with pytest.raises(InvalidInputError):
            chi2_statistic([5, 5], probabilities=[1.0, 0.0])

    def test_probability_sum_checked(self):
        with pytest.raises(InvalidInputError):
            chi2_statistic([5, 5], probabilities=[0.7, 0.7])


class TestExtremeSampleChi2:
    def test_canonical_hundred_of_eight(self):
        assert extreme_sample_chi2(100, 8) == pytest.approx(14.40, abs=1e-12)

    def test_canonical_exact_division(self):
        assert extreme_sample_chi2(98, 8) == pytest.approx(12.25 + 7 * (1.75**2 / 12.25), abs=1e-12)
        assert extreme_sample_chi2(98, 8) == pytest.approx(14.0, abs=1e-12)

    def test_exact_division_closed_form_and_monotone(self):
        # at multiples of k-1 the statistic collapses to m / (k - 1)
        for k in (3, 8, 12):
            values = [extreme_sample_chi2(q * (k - 1), k) for q in range(1, 40)]
            for q, value in enumerate(values, start=1):
                assert value == pytest.approx(q, abs=1e-9)
            assert all(b > a for a, b in zip(values, values[1:]))


class TestMinRepresentativeM:
    def test_eight_cells(self):
        assert min_representative_m(8, 0.05) == 99
        assert 97 <= min_representative_m(8, 0.05) <= 103

    def test_larger_cell_counts(self):
        for k, reference in ((12, 216), (15, 330), (18, 468)):
            m_star = min_representative_m(k, 0.05)
            assert abs(m_star - reference) <= 0.05 * reference

    def test_two_cells_closed_form(self):
        # statistic equals m, so the first exceedance of 3.8415 is m = 4
        assert min_representative_m(2, 0.05) == 4

    def test_monotone_in_k(self):
        values = [min_representative_m(k, 0.05) for k in (8, 12, 15, 18)]
        assert values == sorted(values)

    def test_skewed_probabilities_need_more_rows(self):
        skewed = [0.55, 0.15, 0.15, 0.05, 0.04, 0.03, 0.02, 0.01]
        assert min_representative_m(8, 0.05, probabilities=skewed) > min_representative_m(8, 0.05)

    def test_scan_cap_reported(self, monkeypatch):
        monkeypatch.setattr(samplesize, "SCAN_LIMIT", 20)
        with pytest.raises(ScanLimitError):
            min_representative_m(8, 0.05)


class TestRepresentativenessReport:
    def test_binary_pair_profile(self):
        report = representativeness_report(CardinalityProfile((2, 2), 2))
        assert report.multivariate_cardinality == 8
        assert report.heuristic_m == 80
        assert report.chi2_m_star == 99
        assert report.df == 7
        assert report.critical_value == pytest.approx(CRITICAL_05_7, abs=1e-3)

    def test_mstar_covers_joint_space(self):
        with pytest.raises(InvalidInputError):
            RepresentativenessReport(
                multivariate_cardinality=50,
                heuristic_m=500,
                chi2_m_star=10,
                alpha=0.05,
                df=49,
                critical_value=1.0,
            )

    def test_heuristic_tracks_mstar(self):
        # Both recommendations grow with the joint space and stay comparable:
        # within 2x up to 12 cells, and never beyond 5x through 32 cells (the
        # chi-squared minimum grows a bit faster than linearly).
        ratios = {}
        for k in (8, 12, 16, 24, 32):
            report = representativeness_report(CardinalityProfile((), k))
            ratios[k] = report.chi2_m_star / report.heuristic_m
        assert all(0.5 <= r <= 2.0 for k, r in ratios.items() if k <= 12)
        assert all(0.2 <= r <= 5.0 for r in ratios.values())
        assert list(ratios.values()) == sorted(ratios.values())
