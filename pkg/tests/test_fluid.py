import math

import numpy as np
import pytest

from greedy_ldp.fluid import FluidCurve, clt_sigma2, fluid_z, fluid_z_unclipped, t_star
from greedy_ldp.model import ParameterError


def test_fluid_examples():
    assert fluid_z(1.0, 0.0) == 0.0
    assert fluid_z(1.0, math.log(2.0)) == 1.0
    assert fluid_z(1.0, 10.0) == 1.0


def test_t_star_examples():
    assert t_star(1.0) == pytest.approx(0.693147, abs=1e-6)
    assert t_star(3.0) == pytest.approx(0.462098, abs=1e-6)
    for c in np.linspace(0.05, 20, 60):
        assert fluid_z(c, t_star(c)) == 1.0


def test_t_star_range_and_monotone():
    grid = np.geomspace(1e-4, 100, 200)
    ts = np.array([t_star(c) for c in grid])
    assert np.all((ts > 0) & (ts < 1))
    assert np.all(np.diff(ts) < 0)


def test_clt_sigma2():
    assert clt_sigma2(1.0) == 0.125
    assert clt_sigma2(1e-8) < 1e-8
    grid = np.round(np.arange(0.1, 10.01, 0.1), 10)
    vals = [clt_sigma2(c) for c in grid]
    assert grid[int(np.argmax(vals))] == pytest.approx(1.0)


@pytest.mark.parametrize("c", [0.5, 1.0, 2.0, 5.0])
def test_ode_residual(c):
    h = 1e-5
    t = np.linspace(0.01, t_star(c) - 0.01, 50)
    dz = (fluid_z(c, t + h) - fluid_z(c, t - h)) / (2 * h)
    assert np.max(np.abs(dz - (1 + c * (1 - fluid_z(c, t))))) < 1e-6


def test_small_c_series_matches():
    # just above and below the switch point the two formulas agree
    t = np.linspace(0, 1, 11)
    a = fluid_z_unclipped(0.99e-6, t)
    b = fluid_z_unclipped(1.01e-6, t)
    np.testing.assert_allclose(a, b, atol=1e-7)
    np.testing.assert_allclose(fluid_z_unclipped(1e-9, t), t, atol=1e-8)


def test_rejects():
    with pytest.raises(ParameterError):
        t_star(0.0)
    with pytest.raises(ParameterError):
        fluid_z(1.0, -0.1)


def test_curve_object():
    f = FluidCurve(1.0)
    assert f.t_star == t_star(1.0) and f.sigma2 == 0.125
    assert f(0.3) == fluid_z(1.0, 0.3)
