import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from greedy_ldp.ldp import adaptive_gk15, gauss_legendre, gk15, lambert_w0
from greedy_ldp.model import DomainError, NumericError


class TestLambert:
    def test_examples(self):
        assert lambert_w0(0.0) == 0.0
        assert lambert_w0(math.e) == pytest.approx(1.0, abs=1e-15)
        assert lambert_w0(1.0) == pytest.approx(0.5671432904, abs=1e-10)

    def test_branch_point(self):
        assert lambert_w0(-1 / math.e) == pytest.approx(-1.0, abs=1e-7)

    def test_domain(self):
        with pytest.raises(DomainError):
            lambert_w0(-0.4)

    @given(st.floats(-1 / math.e + 1e-9, 1e300))
    @settings(max_examples=300)
    def test_against_mpmath_property(self, x):
        with mpmath.workdps(40):
            ref = float(mpmath.lambertw(mpmath.mpf(x)).real)
        assert lambert_w0(x) == pytest.approx(ref, rel=1e-12, abs=1e-15)

    @given(st.floats(0.0, 1e300))
    def test_against_scipy_away_from_branch(self, x):
        assert lambert_w0(x) == pytest.approx(special.lambertw(x).real, rel=1e-13, abs=1e-300)

    @pytest.mark.parametrize("x", [1e-300, 1e-8, 0.3, 1.0, 2.5, 10.0, 1e5, 1e100])
    def test_against_mpmath(self, x):
        with mpmath.workdps(40):
            ref = float(mpmath.lambertw(x).real)
        assert lambert_w0(x) == pytest.approx(ref, rel=1e-15)


class TestQuadrature:
    def test_gk15_polynomial_exact(self):
        val, err = gk15(lambda t: t ** 20, 0.0, 1.0)
        assert val == pytest.approx(1 / 21, abs=1e-15)

    def test_adaptive_smooth(self):
        val, err = adaptive_gk15(np.exp, 0.0, 3.0)
        assert abs(val - math.expm1(3.0)) < 1e-12

    def test_adaptive_sqrt_endpoint(self):
        val, _ = adaptive_gk15(np.sqrt, 0.0, 1.0, abs_tol=1e-12)
        assert abs(val - 2 / 3) < 1e-11

    def test_adaptive_vs_quad(self):
        f = lambda t: np.log1p(t) * np.cos(7 * t)
        ref, _ = integrate.quad(lambda t: math.log1p(t) * math.cos(7 * t), 0, 2, epsabs=1e-14)
        val, _ = adaptive_gk15(f, 0.0, 2.0)
        assert abs(val - ref) < 1e-10

    def test_cap(self):
        with pytest.raises(NumericError):
            adaptive_gk15(lambda t: np.sin(1 / np.maximum(t, 1e-300)), 0.0, 1.0,
                          abs_tol=1e-15, max_intervals=8)

    def test_gauss_legendre(self):
        x, w = gauss_legendre(16)
        assert w.sum() == pytest.approx(2.0)
        assert np.dot(w, x ** 30) == pytest.approx(2 / 31)
