import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from greedy_ldp.model import (
    NEG_INF,
    POS_INF,
    DomainError,
    ExtReal,
    ModelParams,
    NumericError,
    ParameterError,
    ScaledPath,
    derive_seed,
    rng_from_seed,
)


class TestModelParams:
    def test_valid(self):
        p = ModelParams(2.0, 10)
        assert p.p == pytest.approx(0.2)
        assert p.require_n() == 10

    @pytest.mark.parametrize("c", [0.0, -1.0, math.inf, math.nan])
    def test_bad_c(self, c):
        with pytest.raises(ParameterError):
            ModelParams(c)

    def test_c_above_n(self):
        with pytest.raises(ParameterError):
            ModelParams(5.0, 4)

    def test_single_vertex_accepts_any_c(self):
        assert ModelParams(5.0, 1).p == 1.0

    @pytest.mark.parametrize("n", [0, -3, 2.5])
    def test_bad_n(self, n):
        with pytest.raises(ParameterError):
            ModelParams(1.0, n)

    def test_asymptotic_has_no_p(self):
        with pytest.raises(ParameterError):
            ModelParams(1.0).p
        with pytest.raises(ParameterError):
            ModelParams(1.0).require_n()

    def test_errors_are_value_errors(self):
        assert issubclass(ParameterError, ValueError)
        assert issubclass(DomainError, ValueError)


class TestExtReal:
    def test_ordering(self):
        assert POS_INF > ExtReal(1e308)
        assert NEG_INF < ExtReal(-1e308)
        assert ExtReal(1.0) < ExtReal(2.0)
        assert POS_INF > 5.0 and ExtReal(3.0) == 3.0

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_inf_dominates(self, x):
        assert NEG_INF < ExtReal(x) < POS_INF

    def test_rejects_ieee_inf(self):
        with pytest.raises(NumericError):
            ExtReal(math.inf)
        with pytest.raises(NumericError):
            ExtReal(math.nan)

    def test_float_and_add(self):
        assert float(POS_INF) == math.inf
        assert float(NEG_INF) == -math.inf
        assert (ExtReal(1.5) + ExtReal(2.0)) == 3.5
        assert (ExtReal(1.5) + POS_INF) is POS_INF
        with pytest.raises(NumericError):
            POS_INF + NEG_INF

    def test_hashable(self):
        assert len({ExtReal(1.0), ExtReal(1.0), POS_INF}) == 2


class TestScaledPath:
    def test_step_eval(self):
        p = ScaledPath([0, 0.5, 1.0], [0, 1, 1], "step")
        assert p(0.0) == 0.0 and p(0.49) == 0.0 and p(0.5) == 1.0 and p(1.0) == 1.0

    def test_linear_eval(self):
        p = ScaledPath([0, 1.0], [0, 1.0], "linear")
        assert p(0.25) == pytest.approx(0.25)

    @pytest.mark.parametrize("times,values", [
        ([0, 0.5, 1], [0, 0.6, 0.5]),   # decreasing
        ([0, 1], [0, 1.2]),             # above 1
        ([0, 1], [0.1, 1]),             # does not start at 0
        ([0.1, 1], [0, 1]),             # time does not start at 0
        ([0, 0.6, 0.5], [0, 0.5, 0.6]),  # time decreasing
    ])
    def test_rejects(self, times, values):
        with pytest.raises(ParameterError):
            ScaledPath(times, values)

    def test_immutable(self):
        p = ScaledPath([0, 1.0], [0, 1.0])
        with pytest.raises(ValueError):
            p.values[0] = 0.5


class TestSeeds:
    def test_golden(self):
        assert derive_seed(0, 0) == 7740861921850268097

    def test_deterministic(self):
        assert derive_seed(123, 4) == derive_seed(123, 4)

    def test_streams_differ(self):
        seeds = {derive_seed(s, i) for s in range(50) for i in range(1024)}
        assert len(seeds) == 50 * 1024

    @given(st.integers(0, 2**64 - 1), st.integers(0, 2**32))
    def test_range(self, s, i):
        v = derive_seed(s, i)
        assert 0 <= v < 2**64
        assert derive_seed(s, i) != derive_seed(s, i + 1)

    def test_rng_reproducible(self):
        a = rng_from_seed(9).random(5)
        b = rng_from_seed(9).random(5)
        np.testing.assert_array_equal(a, b)
