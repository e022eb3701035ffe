"""Rates: the parametric rate ``F(alpha0)``, tail rates, path rates and independent-set bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..fluid import t_star
from ..model import POS_INF, DomainError, ExtReal, ParameterError, ScaledPath
from .cost import cost_L_value
from .lambert import lambert_w0
from .quadrature import adaptive_gk15, gauss_legendre
from .trajectory import HamTrajectory, invert_exit_time, make_ham_trajectory

__all__ = [
    "RateValue",
    "rate_F",
    "rate_integrand",
    "tail_rate",
    "path_rate",
    "sigma1_star",
    "sigma2_star",
    "bound_rate",
    "QUAD_TOL",
]

QUAD_TOL = 1e-10
_GL_ORDER = 16
# smallest distance to x = 1 resolved when a path segment runs into 1
_MIN_GAP = 1e-18


@dataclass(frozen=True)
class RateValue:
    """A rate in nats; ``optimizer`` is the initial momentum attaining it, if any."""

    value: ExtReal
    optimizer: Optional[float] = None

    def __float__(self) -> float:
        return float(self.value)


def rate_integrand(traj: HamTrajectory, t, route: str = "hamiltonian"):
    """Running cost along an extremal.

    ``route="hamiltonian"`` uses the simplified form
    ``c (1 - x) [exp(alpha) (alpha - 1) + 1]``; ``route="lagrangian"``
    evaluates ``L(x, x')`` with ``x'`` from Hamilton's equations.
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    c = traj.c
    g = np.maximum(np.asarray(traj.gap(t)), 0.0)
    a = np.asarray(traj.alpha(t))
    if route == "hamiltonian":
        return c * g * (np.exp(a) * (a - 1.0) + 1.0)
    if route == "lagrangian":
        x = 1.0 - g
        beta = 1.0 + c * g * np.exp(a)
        return np.array([cost_L_value(c, float(xi), float(bi)) for xi, bi in zip(x, beta)])
    raise ParameterError(f"unknown route {route!r}")


def rate_F(c: float, alpha0: float, route: str = "hamiltonian",
           abs_tol: float = QUAD_TOL) -> RateValue:
    """Rate of the extremal with initial momentum ``alpha0`` up to its exit time.

    Integrated with adaptive Gauss–Kronrod to ``abs_tol``; ``F(0) = 0``.
    """
    traj = make_ham_trajectory(c, alpha0)
    if traj.alpha0 == 0.0:
        return RateValue(ExtReal(0.0), 0.0)
    value, _ = adaptive_gk15(lambda t: rate_integrand(traj, t, route), 0.0,
                             traj.exit_time, abs_tol=abs_tol)
    return RateValue(ExtReal(max(value, 0.0)), traj.alpha0)


def tail_rate(c: float, epsilon: float, side: str) -> RateValue:
    """Exponential decay rate of ``P(T_N/N >= T* + eps)`` (upper) or ``P(T_N/N <= T* - eps)`` (lower).

    Raises
    ------
    DomainError
        If ``T* + eps >= 1`` (upper) or ``T* - eps <= 0`` (lower).
    """
    epsilon = float(epsilon)
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    ts = t_star(c)
    if side == "upper":
        target = ts + epsilon
        if not target < 1.0:
            raise DomainError(f"requires T*+eps < 1 (T*={ts:.6g}, eps={epsilon:g})")
    elif side == "lower":
        target = ts - epsilon
        if not target > 0.0:
            raise DomainError(f"requires T*-eps > 0 (T*={ts:.6g}, eps={epsilon:g})")
    else:
        raise ParameterError(f"side must be 'upper' or 'lower', got {side!r}")
    a0 = invert_exit_time(c, target)
    return rate_F(c, a0)


def _segment_rate(c: float, x0: float, x1: float, slope: float) -> float:
    """``(1/slope) int_{x0}^{x1} L(x, slope) dx`` for ``slope > 1``.

    16-point Gauss–Legendre in ``x``; a segment ending at ``x = 1`` is split
    geometrically in ``1 - x`` down to ``1e-18`` to absorb the logarithmic
    endpoint behaviour.
    """
    nodes, weights = gauss_legendre(_GL_ORDER)
    u = slope - 1.0
    log_u_c = math.log(u / c)

    def integrate(g_lo, g_hi):
        # in the gap variable g = 1 - x, so that g stays exact near x = 1
        mid, half = 0.5 * (g_lo + g_hi), 0.5 * (g_hi - g_lo)
        gap = mid + half * nodes
        vals = u * (log_u_c - np.log(gap) - 1.0) + c * gap
        return half * float(np.dot(weights, vals))

    if x1 < 1.0:
        total = integrate(1.0 - x1, 1.0 - x0)
    else:
        pieces = []
        hi_gap = 1.0 - x0
        while hi_gap > _MIN_GAP:
            lo_gap = 0.5 * hi_gap
            pieces.append(integrate(lo_gap, hi_gap))
            hi_gap = lo_gap
        pieces.append(integrate(0.0, hi_gap))
        total = math.fsum(pieces)
    return total / slope


def path_rate(c: float, path: ScaledPath, jumps_as_infinite: bool = False) -> RateValue:
    """Rate functional of a piecewise-linear path.

    Each segment contributes ``int L(phi(t), slope) dt``. A segment with
    ``phi < 1`` and slope below 1 has infinite cost, as has any jump; a
    segment resting at 1 costs nothing. Paths ending before ``t = 1`` are
    extended as constants.

    Raises
    ------
    DomainError
        For a step-interpolated path, unless ``jumps_as_infinite`` is set, in
        which case the (infinite) rate of a discontinuous path is returned.
    """
    if not c > 0:
        raise ParameterError(f"c must be positive, got {c!r}")
    if path.interpolation != "linear":
        if jumps_as_infinite:
            return RateValue(POS_INF)
        raise DomainError("path_rate needs a piecewise-linear path; step paths are not "
                          "absolutely continuous")
    t = path.times
    v = path.values
    if t[-1] < 1.0:
        t = np.append(t, 1.0)
        v = np.append(v, v[-1])
    pieces = []
    for i in range(t.size - 1):
        t0, t1, x0, x1 = t[i], t[i + 1], v[i], v[i + 1]
        dt = t1 - t0
        if dt == 0.0:
            if x1 != x0:
                return RateValue(POS_INF)
            continue
        if x0 == 1.0:
            continue
        slope = (x1 - x0) / dt
        if slope < 1.0:
            return RateValue(POS_INF)
        if slope == 1.0:
            pieces.append(c * dt * (1.0 - 0.5 * (x0 + x1)))
        else:
            pieces.append(_segment_rate(c, x0, x1, slope))
    return RateValue(ExtReal(max(math.fsum(pieces), 0.0)))


def sigma1_star(c: float) -> float:
    """Asymptotic maximum independent-set proportion of G(n, c/n) for ``0 < c < e``.

    ``w + (c/2) w^2`` with ``w = exp(-W0(c))``.
    """
    c = float(c)
    if not 0.0 < c < math.e:
        raise DomainError(f"sigma1* requires 0 < c < e, got c={c!r}")
    w = math.exp(-lambert_w0(c))
    return w + 0.5 * c * w * w


def sigma2_star(c: float) -> float:
    """Erdős upper bound ``(2/c) log c`` on the independent-set proportion, ``c >= 3``."""
    c = float(c)
    if not c >= 3.0:
        raise DomainError(f"sigma2* requires c >= 3, got c={c!r}")
    return 2.0 * math.log(c) / c


def bound_rate(c: float, bound: str) -> RateValue:
    """Rate of ``{T_N/N >= sigma*(c)}`` for ``bound`` in ``{"sigma1", "sigma2"}``."""
    if bound == "sigma1":
        sigma = sigma1_star(c)
    elif bound == "sigma2":
        sigma = sigma2_star(c)
    else:
        raise ParameterError(f"bound must be 'sigma1' or 'sigma2', got {bound!r}")
    ts = t_star(c)
    if not ts < sigma < 1.0:
        raise DomainError(f"{bound}*(c)={sigma:.6g} must lie in (T*, 1) = ({ts:.6g}, 1)")
    a0 = invert_exit_time(c, sigma)
    return rate_F(c, a0)
