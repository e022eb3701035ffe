import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from greedy_ldp.checks import numeric_conjugate_H, numeric_conjugate_L
from greedy_ldp.ldp import cost_L, hamiltonian_H, poisson_rate
from greedy_ldp.model import POS_INF, ExtReal, ParameterError


class TestCost:
    def test_branches(self):
        assert cost_L(1.0, 0.0, 1.0) == 1.0
        assert cost_L(0.7, 1.0, 0.0) == 0.0
        assert cost_L(1.0, 0.0, 2.0) == 0.0
        assert cost_L(1.0, 0.5, 0.5) is POS_INF
        assert cost_L(1.0, 1.0, 0.5) is POS_INF
        assert cost_L(1.0, 0.2, -1.0) is POS_INF

    def test_beta_one_is_limit(self):
        c, x = 1.3, 0.4
        assert float(cost_L(c, x, 1.0 + 1e-12)) == pytest.approx(float(cost_L(c, x, 1.0)), abs=1e-10)

    @given(st.floats(0.1, 5), st.floats(0, 0.99), st.floats(1.0001, 20))
    def test_nonnegative_zero_at_fluid_speed(self, c, x, beta):
        assert float(cost_L(c, x, beta)) >= -1e-12
        assert float(cost_L(c, x, 1 + c * (1 - x))) == pytest.approx(0.0, abs=1e-12)

    def test_bad_inputs(self):
        with pytest.raises(ParameterError):
            cost_L(0.0, 0.5, 2.0)
        with pytest.raises(ParameterError):
            cost_L(1.0, 1.5, 2.0)

    def test_returns_extreal(self):
        assert isinstance(cost_L(1.0, 0.2, 3.0), ExtReal)


class TestHamiltonian:
    @given(st.floats(0.1, 5), st.floats(0, 0.99))
    def test_zero_momentum(self, c, x):
        assert hamiltonian_H(c, x, 0.0) == 0.0

    @given(st.floats(0.1, 5), st.floats(-10, 10))
    def test_absorbed(self, c, a):
        assert hamiltonian_H(c, 1.0, a) == 0.0

    def test_value(self):
        assert hamiltonian_H(1.0, 0.0, 1.0) == pytest.approx(math.e, abs=1e-6)


class TestPoisson:
    @given(st.floats(0.01, 50))
    def test_at_mean_and_zero(self, lam):
        assert float(poisson_rate(lam, lam)) == pytest.approx(0.0, abs=1e-12)
        assert poisson_rate(lam, 0.0) == lam

    def test_value(self):
        assert float(poisson_rate(1.0, 2.0)) == pytest.approx(2 * math.log(2) - 1, abs=1e-12)

    def test_negative_u(self):
        assert poisson_rate(1.0, -0.1) is POS_INF

    @given(st.floats(0.1, 3), st.floats(0, 0.95), st.floats(1.001, 8))
    def test_identity_with_cost(self, c, x, beta):
        assert cost_L(c, x, beta) == poisson_rate(c * (1 - x), beta - 1)


class TestLegendre:
    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    def test_L_is_conjugate_of_H(self, c):
        for x in np.round(np.arange(0.0, 0.95, 0.1), 10):
            for beta in np.linspace(1.01, 6.0, 15):
                assert float(cost_L(c, x, beta)) == pytest.approx(numeric_conjugate_L(c, x, beta), abs=1e-6)

    @pytest.mark.parametrize("c", [0.5, 1.0, 2.0])
    def test_H_is_conjugate_of_L(self, c):
        for x in np.round(np.arange(0.0, 0.95, 0.1), 10):
            for a in np.linspace(-3.0, 3.0, 13):
                assert hamiltonian_H(c, x, a) == pytest.approx(numeric_conjugate_H(c, x, a), abs=1e-6)
