import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import zeta as hurwitz

from linkgraph import (
    DegreeHistogram,
    Direction,
    PowerLawFitError,
    UndefinedStatisticError,
    crossed_heterogeneity,
    cumulative,
    degree_histogram,
    mle_powerlaw,
    sample_zeta,
    select_fit_range,
    summarize,
)

import oracles


def hist_of(values, direction=Direction.IN):
    return DegreeHistogram.from_values(np.asarray(values, dtype=np.int64), direction)


class TestHistogram:
    def test_includes_zero_degree(self, toy8):
        h = degree_histogram(toy8, Direction.IN)
        assert h.count_at(0) == 2  # nodes 0 and 7
        assert h.total_nodes == 8

    def test_counts_sum_to_nodes(self, toy8):
        for d in (Direction.IN, Direction.OUT):
            h = degree_histogram(toy8, d)
            assert int(h.counts.sum()) == toy8.node_count

    def test_sparse_support(self):
        h = hist_of([0, 0, 1000000])
        assert h.degrees.tolist() == [0, 1000000]
        assert h.counts.tolist() == [2, 1]

    def test_probabilities_normalized(self):
        h = hist_of([1, 1, 2, 5])
        assert h.probabilities.sum() == pytest.approx(1.0)

    def test_from_mapping_matches_from_values(self):
        a = hist_of([3, 3, 7])
        b = DegreeHistogram.from_mapping({3: 2, 7: 1}, Direction.IN)
        assert a.degrees.tolist() == b.degrees.tolist()
        assert a.counts.tolist() == b.counts.tolist()


class TestCumulative:
    def test_exact_duality(self):
        rng = np.random.default_rng(0)
        values = rng.integers(0, 40, size=500)
        h = hist_of(values)
        c = cumulative(h)
        # differencing the integer suffix counts recovers the histogram exactly
        ext = np.append(c.suffix_counts, 0)
        assert (ext[:-1] - ext[1:] == h.counts).all()

    def test_at_matches_direct_count(self):
        rng = np.random.default_rng(1)
        values = rng.integers(0, 25, size=300).tolist()
        c = cumulative(hist_of(values))
        for k in range(-1, 30):
            assert float(c.at(k)) == pytest.approx(
                oracles.cumulative_bruteforce(values, k)
            )

    def test_starts_at_one_for_degree_zero(self):
        c = cumulative(hist_of([0, 1, 2]))
        assert float(c.at(0)) == 1.0


class TestSummary:
    def test_against_direct_sums(self):
        rng = np.random.default_rng(2)
        values = rng.integers(0, 50, size=400).tolist()
        s = summarize(hist_of(values))
        assert s.mean == pytest.approx(sum(values) / len(values))
        assert s.std == pytest.approx(float(np.std(values)))
        assert s.kappa == pytest.approx(oracles.kappa_direct(values))
        assert s.max_degree == max(values)

    def test_all_zero_degrees_flags_kappa(self):
        s = summarize(hist_of([0, 0, 0]))
        assert s.kappa is None
        assert s.note is not None
        assert s.mean == 0.0

    def test_in_out_means_equal(self, toy8):
        s_in = summarize(degree_histogram(toy8, Direction.IN))
        s_out = summarize(degree_histogram(toy8, Direction.OUT))
        assert s_in.mean == s_out.mean == 1.0


class TestCrossedHeterogeneity:
    def test_toy8_value(self, toy8):
        assert crossed_heterogeneity(toy8) == pytest.approx(6 / 8)

    def test_edgeless_raises(self, make_graph):
        with pytest.raises(UndefinedStatisticError):
            crossed_heterogeneity(make_graph(3, []))

    def test_large_degrees_no_overflow(self, make_graph):
        # star graphs stress the product sum; exact integers required
        n = 5000
        edges = [(0, i) for i in range(1, n)] + [(i, 0) for i in range(1, n)]
        g = make_graph(n, edges)
        # node 0: k_in = k_out = n-1; leaves: 1 and 1
        want = ((n - 1) ** 2 + (n - 1)) / (2 * (n - 1))
        assert crossed_heterogeneity(g) == pytest.approx(want)


class TestMle:
    def test_gamma_maximizes_likelihood_on_grid(self):
        # independent check: the returned exponent beats a dense grid
        rng = np.random.default_rng(11)
        values = sample_zeta(2.3, 30000, rng)
        h = hist_of(values)
        fit = mle_powerlaw(h, k_min=1)
        degs = h.degrees.astype(np.float64)
        cnts = h.counts.astype(np.float64)

        def loglike(gamma):
            z = hurwitz(gamma, 1)
            return -gamma * float(cnts @ np.log(degs)) - cnts.sum() * np.log(z)

        grid = np.linspace(fit.gamma - 0.05, fit.gamma + 0.05, 201)
        best = grid[int(np.argmax([loglike(g) for g in grid]))]
        assert abs(best - fit.gamma) < 1e-3

    def test_bounded_range_normalization(self):
        # with a hard upper cutoff the normalizer is a plain finite sum
        rng = np.random.default_rng(3)
        values = sample_zeta(2.0, 40000, rng, k_min=2, cutoff=50)
        fit = mle_powerlaw(hist_of(values), k_min=2, k_max_fit=50)
        assert fit.k_max_fit == 50
        assert abs(fit.gamma - 2.0) < 0.1

    def test_recovers_exponent(self):
        rng = np.random.default_rng(7)
        values = sample_zeta(2.6, 100000, rng)
        fit = mle_powerlaw(hist_of(values), k_min=1)
        assert abs(fit.gamma - 2.6) < 0.05
        assert fit.n_tail == 100000
        assert fit.stderr < 0.02

    def test_stderr_shrinks_with_sample_size(self):
        rng = np.random.default_rng(8)
        small = mle_powerlaw(hist_of(sample_zeta(2.2, 2000, rng)), k_min=1)
        big = mle_powerlaw(hist_of(sample_zeta(2.2, 200000, rng)), k_min=1)
        assert big.stderr < small.stderr / 5

    def test_ks_small_for_true_model(self):
        rng = np.random.default_rng(9)
        fit = mle_powerlaw(hist_of(sample_zeta(2.4, 50000, rng)), k_min=1)
        assert fit.ks < 0.05
        assert fit.powerlaw_plausible

    def test_geometric_rejected(self):
        rng = np.random.default_rng(10)
        values = rng.geometric(0.25, size=50000)
        fit = mle_powerlaw(hist_of(values), k_min=1)
        assert fit.ks > 0.05
        assert not fit.powerlaw_plausible

    def test_k_min_below_one_rejected(self):
        with pytest.raises(PowerLawFitError):
            mle_powerlaw(hist_of([1, 2, 3]), k_min=0)

    def test_empty_tail_rejected(self):
        with pytest.raises(PowerLawFitError):
            mle_powerlaw(hist_of([1, 2, 3]), k_min=10)

    def test_single_support_point_rejected(self):
        with pytest.raises(PowerLawFitError):
            mle_powerlaw(hist_of([4] * 100), k_min=2)

    def test_k_min_excludes_lighter_head(self):
        rng = np.random.default_rng(12)
        tail = sample_zeta(2.1, 40000, rng, k_min=10)
        head = rng.integers(1, 10, size=20000)
        fit = mle_powerlaw(hist_of(np.concatenate([head, tail])), k_min=10)
        assert fit.n_tail == 40000
        assert abs(fit.gamma - 2.1) < 0.1


class TestSelectFitRange:
    def test_finds_spliced_tail_start(self):
        rng = np.random.default_rng(13)
        body = rng.integers(1, 50, size=30000)
        tail = sample_zeta(2.2, 30000, rng, k_min=50)
        h = hist_of(np.concatenate([body, tail]))
        k_min, k_max = select_fit_range(h)
        assert 40 <= k_min <= 70
        assert k_max == int(h.max_degree)
        fit = mle_powerlaw(h, k_min=k_min)
        assert abs(fit.gamma - 2.2) < 0.15

    def test_pure_sample_selects_near_origin(self):
        rng = np.random.default_rng(14)
        h = hist_of(sample_zeta(2.5, 50000, rng))
        k_min, _ = select_fit_range(h)
        assert k_min <= 3

    def test_single_distinct_degree_rejected(self):
        with pytest.raises(PowerLawFitError):
            select_fit_range(hist_of([5] * 100))

    def test_small_histogram_uses_fallback_window(self):
        # too little mass for the usual thresholds, but still fittable
        k_min, k_max = select_fit_range(hist_of([1, 2, 3]))
        assert k_min >= 1
        assert k_max == 3


class TestSampleZeta:
    def test_frequencies_match_pmf(self):
        rng = np.random.default_rng(15)
        gamma = 2.5
        n = 200000
        values = sample_zeta(gamma, n, rng)
        z = hurwitz(gamma, 1)
        for k in (1, 2, 3, 5):
            p = k ** -gamma / z
            got = float((values == k).mean())
            assert abs(got - p) < 4 * np.sqrt(p * (1 - p) / n)

    def test_cutoff_respected(self):
        rng = np.random.default_rng(16)
        values = sample_zeta(1.8, 20000, rng, k_min=3, cutoff=40)
        assert values.min() >= 3
        assert values.max() <= 40

    def test_heavy_tail_reaches_past_table(self):
        # gamma this small pushes a visible fraction of mass beyond the
        # inverse-CDF table, exercising the exact tail expansion
        rng = np.random.default_rng(17)
        values = sample_zeta(1.3, 20000, rng)
        frac_beyond = float((values > 1_000_000).mean())
        z = hurwitz(1.3, 1)
        want = hurwitz(1.3, 1_000_001) / z
        assert frac_beyond > 0
        assert abs(frac_beyond - want) < 5 * np.sqrt(want * (1 - want) / 20000)

    def test_deterministic_for_seed(self):
        a = sample_zeta(2.2, 1000, np.random.default_rng(18))
        b = sample_zeta(2.2, 1000, np.random.default_rng(18))
        assert (a == b).all()

    def test_bad_gamma_rejected(self):
        with pytest.raises(ValueError):
            sample_zeta(1.0, 10, np.random.default_rng(0))


@given(
    st.lists(st.integers(min_value=0, max_value=60), min_size=1, max_size=200)
)
@settings(max_examples=80, deadline=None)
def test_cumulative_property(values):
    c = cumulative(hist_of(values))
    ks = sorted(set(values)) + [max(values) + 1]
    for k in ks:
        assert float(c.at(k)) == pytest.approx(
            oracles.cumulative_bruteforce(values, k)
        )


@given(
    st.lists(st.integers(min_value=0, max_value=30), min_size=1, max_size=100)
)
@settings(max_examples=80, deadline=None)
def test_summary_moments_property(values):
    s = summarize(hist_of(values))
    assert s.mean == pytest.approx(np.mean(values))
    kd = oracles.kappa_direct(values)
    if kd is None:
        assert s.kappa is None
    else:
        assert s.kappa == pytest.approx(kd)
