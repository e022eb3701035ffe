import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from greedy_ldp.chain import (
    DP_CAP_ENV,
    ChainTrajectory,
    dp_cap,
    exact_stop_time_distribution,
    read_dist_csv,
    scaled_path,
    simulate_chain,
    simulate_stop_times,
    tail_log_prob,
    threshold_index,
    write_dist_csv,
)
from greedy_ldp.fluid import clt_sigma2, t_star
from greedy_ldp.model import NEG_INF, ExtReal, ModelParams, ParameterError, ResourceError, derive_seed


class TestSimulate:
    @given(st.integers(1, 60), st.floats(0.1, 5.0), st.integers(0, 2**63))
    @settings(max_examples=60, deadline=None)
    def test_trajectory_invariants(self, n, c, seed):
        c = min(c, n)
        tr = simulate_chain(ModelParams(c, n), seed)
        z = tr.z
        assert z[0] == 0 and z[-1] == n
        assert np.all(np.diff(z) >= 1)
        assert 1 <= tr.stop_time <= n
        # from n-1 the only move is to n
        hits = np.nonzero(z[:-1] == n - 1)[0]
        for k in hits:
            assert z[k + 1] == n

    def test_deterministic(self):
        p = ModelParams(2.0, 100)
        np.testing.assert_array_equal(simulate_chain(p, 5).z, simulate_chain(p, 5).z)

    def test_n2_bernoulli_half(self):
        p = ModelParams(1.0, 2)
        stops = np.array([simulate_chain(p, derive_seed(11, i)).stop_time for i in range(20_000)])
        frac = np.mean(stops == 1)
        assert abs(frac - 0.5) < 3 * math.sqrt(0.25 / stops.size)

    def test_batch_matches_paths(self):
        p = ModelParams(1.5, 40)
        stop, paths = simulate_stop_times(p, 300, 3, return_paths=True)
        for s, row in zip(stop, paths):
            assert row[s] == 40 and (s == 0 or row[s - 1] < 40)
            assert np.all(np.diff(row[: s + 1]) >= 1)

    def test_requires_n(self):
        with pytest.raises(ParameterError):
            simulate_chain(ModelParams(1.0), 0)

    def test_trajectory_validation(self):
        with pytest.raises(ParameterError):
            ChainTrajectory(3, np.array([0, 2, 2, 3]))
        with pytest.raises(ParameterError):
            ChainTrajectory(3, np.array([1, 3]))
        with pytest.raises(ParameterError):
            ChainTrajectory(3, np.array([0, 2]))


class TestScaledPath:
    def test_two_vertex_jump(self):
        path = scaled_path(ChainTrajectory(2, np.array([0, 2])))
        assert path(0.0) == 0.0 and path(0.49) == 0.0
        assert path(0.5) == 1.0 and path(1.0) == 1.0
        assert path.interpolation == "step"

    @given(st.integers(1, 50), st.integers(0, 1000))
    @settings(max_examples=30, deadline=None)
    def test_endpoints(self, n, seed):
        path = scaled_path(simulate_chain(ModelParams(min(1.0, n), n), seed))
        assert path(0.0) == 0.0 and path(1.0) == 1.0


class TestExactDist:
    def test_single_vertex(self):
        for c in (0.3, 1.0, 5.0):
            d = exact_stop_time_distribution(ModelParams(c, 1))
            assert d.pmf.tolist() == [1.0]

    def test_n2(self):
        d = exact_stop_time_distribution(ModelParams(1.0, 2))
        np.testing.assert_allclose(d.pmf, [0.5, 0.5], atol=1e-15)

    def test_n3(self):
        d = exact_stop_time_distribution(ModelParams(1.0, 3))
        np.testing.assert_allclose(d.pmf, [1 / 9, 16 / 27, 8 / 27], atol=1e-12)

    def test_complete_graph(self):
        d = exact_stop_time_distribution(ModelParams(6.0, 6))
        assert d.pmf[0] == pytest.approx(1.0)

    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0, 5.0])
    def test_normalised_and_mean_bounds(self, c):
        for n in range(1, 201):
            if c > n:
                continue
            d = exact_stop_time_distribution(ModelParams(c, n))
            assert abs(d.pmf.sum() - 1.0) < 1e-12
            assert n / (1 + c) - 1e-9 <= d.mean() <= n
            assert np.all(d.pmf >= 0)

    def test_cap(self, monkeypatch):
        with pytest.raises(ResourceError):
            exact_stop_time_distribution(ModelParams(1.0, 2001))
        with pytest.raises(ResourceError):
            exact_stop_time_distribution(ModelParams(1.0, 50), cap=10)
        monkeypatch.setenv(DP_CAP_ENV, "30")
        assert dp_cap() == 30
        with pytest.raises(ResourceError):
            exact_stop_time_distribution(ModelParams(1.0, 31))
        monkeypatch.setenv(DP_CAP_ENV, "zero")
        with pytest.raises(ParameterError):
            dp_cap()

    def test_c_above_n(self):
        with pytest.raises(ParameterError):
            exact_stop_time_distribution(ModelParams(3.0, 2))

    def test_deep_tail_survives_underflow(self):
        # P(T = n) = prod (1-p)^(n-k-1) = (1-p)^(n(n-1)/2)
        n, c = 2000, 1.0
        d = exact_stop_time_distribution(ModelParams(c, n))
        expect = n * (n - 1) / 2 * math.log1p(-c / n)
        assert d.pmf[-1] == 0.0
        assert d.log_pmf[-1] == pytest.approx(expect, rel=1e-9)

    def test_csv_roundtrip(self):
        d = exact_stop_time_distribution(ModelParams(1.0, 12))
        text = write_dist_csv(d)
        assert text.splitlines()[0] == "k,pmf,log_pmf"
        back = read_dist_csv(io.StringIO(text), 1.0)
        np.testing.assert_array_equal(back.log_pmf, d.log_pmf)


class TestTails:
    def setup_method(self):
        self.d3 = exact_stop_time_distribution(ModelParams(1.0, 3))
        self.d2 = exact_stop_time_distribution(ModelParams(1.0, 2))

    def test_upper_whole_mass(self):
        assert tail_log_prob(self.d3, 1 / 3, "upper") == 0.0
        assert tail_log_prob(self.d3, 0.1, "upper") == 0.0

    def test_examples(self):
        assert float(tail_log_prob(self.d3, 0.9, "upper")) == pytest.approx(math.log(8 / 27), abs=1e-12)
        assert float(tail_log_prob(self.d2, 0.6, "lower")) == pytest.approx(math.log(0.5), abs=1e-12)

    def test_empty(self):
        assert tail_log_prob(self.d3, 0.2, "lower") is NEG_INF

    def test_returns_extreal(self):
        assert isinstance(tail_log_prob(self.d3, 0.5, "upper"), ExtReal)

    def test_threshold_rounding(self):
        assert threshold_index(10, 0.3, "upper") == 3
        assert threshold_index(10, 0.3, "lower") == 3
        assert threshold_index(10, 0.31, "upper") == 4
        assert threshold_index(10, 0.31, "lower") == 3
        with pytest.raises(ParameterError):
            threshold_index(10, 0.31, "middle")

    @given(st.floats(0.01, 0.99))
    @settings(max_examples=50, deadline=None)
    def test_complementary(self, theta):
        d = exact_stop_time_distribution(ModelParams(1.0, 30))
        up = float(tail_log_prob(d, theta, "upper"))
        k = threshold_index(30, theta, "upper")
        lo = float(tail_log_prob(d, (k - 1) / 30, "lower")) if k > 1 else -math.inf
        assert math.exp(up) + math.exp(lo) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.slow
def test_monte_carlo_tv_against_dp():
    p = ModelParams(1.0, 50)
    d = exact_stop_time_distribution(p)
    stops = simulate_stop_times(p, 1_000_000, derive_seed(77, 0))
    emp = np.bincount(stops, minlength=51)[1:] / stops.size
    assert 0.5 * np.abs(emp - d.pmf).sum() < 0.005


@pytest.mark.slow
def test_scalar_chain_matches_dp():
    # the per-replica sampler, not only the batch one, follows the DP law
    p = ModelParams(2.0, 30)
    d = exact_stop_time_distribution(p)
    stops = [simulate_chain(p, derive_seed(5, i)).stop_time for i in range(100_000)]
    emp = np.bincount(stops, minlength=31)[1:] / len(stops)
    assert 0.5 * np.abs(emp - d.pmf).sum() < 0.01


@pytest.mark.slow
def test_law_of_large_numbers():
    p = ModelParams(1.0, 100_000)
    stops = simulate_stop_times(p, 100, derive_seed(3, 0))
    assert abs(np.mean(stops / p.n) - t_star(1.0)) < 0.005
