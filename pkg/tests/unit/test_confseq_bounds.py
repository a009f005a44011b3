"""Unit tests for the analytic length bounds."""

import math

import numpy as np
import pytest

from seqmc.confseq import (
    BinomialCount,
    cp_exact_interval,
    hoeffding_tail,
    length_exponent_ratio,
    lemma1_length_bound,
    lemma2_length_bound,
)
from seqmc.errors import RejectedInputError


class TestLemma1:
    """Clopper-Pearson length bound."""

    @pytest.mark.unit
    def test_cancelling_case(self):
        assert lemma1_length_bound(2, math.exp(-1)) == pytest.approx(1.0)

    @pytest.mark.unit
    def test_quadrupled_n_halves(self):
        assert lemma1_length_bound(8, math.exp(-1)) == pytest.approx(0.5)

    @pytest.mark.unit
    def test_direct_value(self):
        assert lemma1_length_bound(10**4, 0.01) == pytest.approx(0.030349, abs=1e-6)

    @pytest.mark.unit
    @pytest.mark.parametrize("n", [10, 100, 1000])
    @pytest.mark.parametrize("rho", [0.05, 1e-4])
    def test_bounds_exact_interval(self, n, rho):
        for s in range(0, n + 1, max(1, n // 20)):
            interval = cp_exact_interval(BinomialCount(n, s), rho)
            assert interval.length <= lemma1_length_bound(n, rho) + 1e-12

    @pytest.mark.unit
    @pytest.mark.parametrize("n, rho", [(0, 0.1), (10, 0.0), (10, 1.0)])
    def test_invalid_arguments(self, n, rho):
        with pytest.raises(RejectedInputError):
            lemma1_length_bound(n, rho)


class TestLemma2:
    """Robbins-sequence length bound."""

    @pytest.mark.unit
    def test_value_at_three(self):
        assert lemma2_length_bound(3) == pytest.approx(0.9272, abs=1e-4)

    @pytest.mark.unit
    def test_value_at_million(self):
        assert lemma2_length_bound(10**6) == pytest.approx(0.0042223, abs=1e-7)

    @pytest.mark.unit
    def test_strictly_decreasing(self):
        values = [lemma2_length_bound(n) for n in range(3, 20001)]
        assert all(b < a for a, b in zip(values, values[1:]))

    @pytest.mark.unit
    @pytest.mark.parametrize("n", [1, 2])
    def test_needs_log_n_above_one(self, n):
        with pytest.raises(RejectedInputError):
            lemma2_length_bound(n)


class TestHoeffding:
    """Hoeffding tail bound for Bernoulli means."""

    @pytest.mark.unit
    def test_one_sided_value(self):
        assert hoeffding_tail(100, 0.1) == pytest.approx(math.exp(-2))

    @pytest.mark.unit
    def test_zero_deviation_two_sided_is_vacuous(self):
        assert hoeffding_tail(57, 0.0, two_sided=True) == 2.0

    @pytest.mark.unit
    def test_invariant_in_delta_squared_n(self):
        assert hoeffding_tail(400, 0.05) == pytest.approx(hoeffding_tail(100, 0.1))

    @pytest.mark.unit
    def test_negative_delta_rejected(self):
        with pytest.raises(RejectedInputError):
            hoeffding_tail(10, -0.1)


class TestLengthExponent:
    """bound(n) / n^gamma diagnostics."""

    @pytest.mark.unit
    def test_lemma2_ratio_decreases(self):
        grid = np.logspace(3, 6, 13).astype(int)
        ratios = length_exponent_ratio(lemma2_length_bound, grid, -0.4)
        assert np.all(np.diff(ratios) < 0)

    @pytest.mark.unit
    def test_power_law_ratio_is_constant(self):
        ratios = length_exponent_ratio(lambda n: n**-0.4, [10, 100, 1000], -0.4)
        assert np.allclose(ratios, 1.0)
