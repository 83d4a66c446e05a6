from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from ivmf.model import WeightScheme
from ivmf.stats import (
    FLAG_IDENTICAL,
    FLAG_REVERSED,
    histogram,
    p_two_sided,
    pearson,
    rank_correlation,
    regularized_incomplete_beta,
    sensitivity_table,
    t_statistic,
)


def t_density(u: float, df: int) -> float:
    """Student's t density, written out directly for the quadrature oracle."""
    return (
        math.exp(math.lgamma((df + 1) / 2) - math.lgamma(df / 2))
        / math.sqrt(df * math.pi)
        * (1 + u * u / df) ** (-(df + 1) / 2)
    )


def p_oracle(t: float, df: int) -> float:
    """Two-sided p by adaptive quadrature of the t density."""
    tail, _ = integrate.quad(t_density, abs(t), math.inf, args=(df,),
                             epsabs=1e-12, epsrel=1e-12)
    return 2.0 * tail


class TestPearson:
    def test_self_correlation(self):
        assert pearson([1, 2, 3], [1, 2, 3]) == pytest.approx(1.0)

    def test_exact_reversal(self):
        assert pearson([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)

    def test_hand_expanded_value(self):
        # cov = 3, var_x = 2, var_y = 14/3  =>  r = 3 / sqrt(28/3)
        expected = 3 / math.sqrt(2 * 14 / 3)
        assert pearson([1, 2, 3], [1, 2, 4]) == pytest.approx(expected, abs=1e-12)
        assert pearson([1, 2, 3], [1, 2, 4]) == pytest.approx(0.9819805060619657)

    def test_zero_variance(self):
        with pytest.raises(ValueError, match="zero variance"):
            pearson([1, 1, 1], [1, 2, 3])

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length mismatch"):
            pearson([1, 2, 3], [1, 2])

    def test_too_short(self):
        with pytest.raises(ValueError, match="at least 3"):
            pearson([1, 2], [1, 2])

    def test_bounded(self):
        assert abs(pearson([1.0, 2.0, 3.0, 4.1], [2.0, 4.0, 6.0, 8.2])) <= 1.0


def spearman_formula(x, y) -> float:
    """1 - 6*sum(d^2)/(n(n^2-1)) -- valid only without ties."""
    n = len(x)
    rx = [sorted(x).index(v) + 1 for v in x]
    ry = [sorted(y).index(v) + 1 for v in y]
    d2 = sum((a - b) ** 2 for a, b in zip(rx, ry))
    return 1 - 6 * d2 / (n * (n * n - 1))


class TestRankCorrelation:
    def test_monotone_pairs(self):
        assert rank_correlation([1, 5, 9], [2, 70, 900]) == pytest.approx(1.0)

    def test_tie_free_formula(self):
        assert rank_correlation([1, 2, 3, 4], [1, 3, 2, 4]) == pytest.approx(0.8)

    def test_tied_input_reduces_to_pearson_on_ranks(self):
        assert rank_correlation([5, 5, 4], [9, 8, 7]) == pytest.approx(
            pearson([1.5, 1.5, 3], [1, 2, 3])
        )

    @given(
        st.lists(
            st.floats(min_value=-1e6, max_value=1e6), min_size=3, max_size=25,
            unique=True,
        ),
        st.randoms(use_true_random=False),
    )
    def test_matches_formula_on_tie_free_data(self, x, rng):
        from hypothesis import assume

        # Values must stay distinct after the rank grouper's 9-decimal
        # rounding, otherwise the tie-free formula no longer applies.
        assume(len({round(v, 9) for v in x}) == len(x))
        y = list(x)
        rng.shuffle(y)
        assert rank_correlation(x, y) == pytest.approx(
            spearman_formula(x, y), abs=1e-12
        )


class TestTStatistic:
    @pytest.mark.parametrize(
        "r,expected",
        [
            (0.316, 1.2900), (0.520, 2.3578), (0.561, 2.6247), (0.887, 7.4395),
            (0.750, 4.3916), (0.967, 14.6999), (0.952, 12.0454),
        ],
    )
    def test_values_for_n_17(self, r, expected):
        assert t_statistic(r, 17) == pytest.approx(expected, abs=5e-4)

    def test_zero(self):
        assert t_statistic(0.0, 17) == 0.0

    def test_odd_symmetry(self):
        assert t_statistic(-0.6, 20) == -t_statistic(0.6, 20)

    def test_degenerate(self):
        with pytest.raises(ValueError, match="degenerate"):
            t_statistic(1.0, 17)

    def test_small_n(self):
        with pytest.raises(ValueError):
            t_statistic(0.5, 2)


class TestPTwoSided:
    def test_symmetry_point(self):
        assert p_two_sided(0.0, 5) == 1.0

    @pytest.mark.parametrize(
        "t,df,expected,tol",
        [
            (1.291, 15, 0.216, 1e-3),
            (2.355, 15, 0.033, 1e-3),
            (2.627, 15, 0.019, 1e-3),
        ],
    )
    def test_published_pairs(self, t, df, expected, tol):
        assert p_two_sided(t, df) == pytest.approx(expected, abs=tol)

    def test_large_t_value(self):
        # ~0.00053 by quadrature; notably NOT the 0.0011 printed in the
        # reference sensitivity table (see the discrepancy report).
        p = p_two_sided(4.391, 15)
        assert p == pytest.approx(p_oracle(4.391, 15), abs=1e-9)
        assert p == pytest.approx(0.000526, abs=2e-5)
        assert abs(p - 0.0011) > 4e-4

    def test_even_in_t(self):
        assert p_two_sided(-2.5, 9) == p_two_sided(2.5, 9)

    def test_strictly_decreasing_in_t(self):
        df = 7
        values = [p_two_sided(t / 4, df) for t in range(0, 41)]
        assert all(a > b for a, b in zip(values, values[1:]))

    def test_matches_quadrature_oracle_spot(self):
        for df in (1, 2, 5, 15, 30):
            for t in (0.0, 0.1, 1.0, 2.5, 7.0, 10.0):
                assert p_two_sided(t, df) == pytest.approx(
                    p_oracle(t, df), abs=1e-9
                ), (t, df)

    def test_incomplete_beta_edges(self):
        assert regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
        assert regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0
        with pytest.raises(ValueError):
            regularized_incomplete_beta(2.0, 3.0, 1.5)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(-1.0, 3.0, 0.5)


def scheme(name="s", **overrides):
    base = dict(name=name, w_cmpx=-0.5, w_pu=3.0, w_tm=1.0, w_sec=1.0,
                w_anon=1.6, w_ivf=1.8, w_uvf=2.0, w_evf=1.4, w_cres=1.2)
    base.update(overrides)
    return WeightScheme(**base)


class TestSensitivityTable:
    def test_baseline_vs_itself_is_degenerate(self, dataset, default_scheme):
        (row,) = sensitivity_table(dataset, default_scheme, [default_scheme])
        assert row.r == 1.0
        assert row.r_squared == 1.0
        assert row.t is None and row.p is None
        assert FLAG_IDENTICAL in row.flags
        assert row.n == 17

    def test_reversed_ranking_flagged(self, dataset, default_scheme):
        # Negating every weight reverses the composite ordering exactly.
        reversed_scheme = scheme(
            "negated", w_cmpx=0.5, w_pu=-3.0, w_tm=-1.0,
        )
        (row,) = sensitivity_table(dataset, default_scheme, [reversed_scheme],
                                   level="IVMF")
        assert row.r == -1.0
        assert FLAG_REVERSED in row.flags
        assert row.t is None

    def test_regular_variant(self, dataset, default_scheme):
        variant = scheme("equalish", w_cmpx=1.0, w_pu=1.0, w_tm=1.0)
        (row,) = sensitivity_table(dataset, default_scheme, [variant])
        assert -1.0 < row.r < 1.0
        assert row.r_squared == pytest.approx(row.r ** 2, abs=1e-12)
        assert row.t == pytest.approx(t_statistic(row.r, 17), abs=1e-12)
        assert row.p == pytest.approx(p_two_sided(row.t, 15), abs=1e-12)
        assert 0.0 <= row.p <= 1.0

    def test_tm_level(self, dataset, default_scheme):
        variant = scheme("verif", w_sec=0.5, w_anon=0.5, w_ivf=2.0, w_uvf=2.0,
                         w_evf=2.0, w_cres=0.5)
        (row,) = sensitivity_table(dataset, default_scheme, [variant], level="TM")
        assert row.level == "TM"
        assert row.n == 17

    def test_unknown_level(self, dataset, default_scheme):
        with pytest.raises(ValueError, match="unknown level"):
            sensitivity_table(dataset, default_scheme, [default_scheme], level="nope")

    def test_variant_order_preserved(self, dataset, default_scheme):
        variants = [scheme("a", w_pu=2.0), scheme("b", w_pu=1.0)]
        rows = sensitivity_table(dataset, default_scheme, variants)
        assert [r.variant_scheme for r in rows] == ["a", "b"]


class TestHistogram:
    def test_single_value(self):
        assert histogram([0.5], 1, 0.0, 1.0).counts == (1,)

    def test_boundary_closure(self):
        # Left-closed bins, last bin closed: 0.0 lands in bin 0, 1.0 in the
        # last bin.
        assert histogram([0.0, 1.0], 2, 0.0, 1.0).counts == (1, 1)

    def test_interior_edge_goes_right(self):
        assert histogram([0.3], 10, 0.0, 1.0).counts[3] == 1

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="outside histogram range"):
            histogram([1.5], 2, 0.0, 1.0)

    def test_bad_range(self):
        with pytest.raises(ValueError):
            histogram([0.5], 2, 1.0, 0.0)

    def test_bad_bin_count(self):
        with pytest.raises(ValueError):
            histogram([0.5], 0, 0.0, 1.0)

    def test_counts_sum(self, dataset, default_scheme):
        from ivmf.scoring import ivmf_scores

        table = ivmf_scores(dataset, default_scheme)
        spec = histogram([r.ivmf_norm for r in table.rows], 10, 0.0, 1.0)
        assert sum(spec.counts) == 17

    @given(
        st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=60),
        st.integers(min_value=1, max_value=25),
    )
    def test_counts_always_sum_to_input_length(self, values, bins):
        spec = histogram(values, bins, 0.0, 1.0)
        assert sum(spec.counts) == len(values)
