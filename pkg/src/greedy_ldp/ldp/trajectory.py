"""Closed-form extremals of the rate functional and their exit times.

Hamilton's equations for the exploration Hamiltonian read

    x' = 1 + c (1 - x) exp(alpha),      x(0) = 0,
    alpha' = c (exp(alpha) - 1),        alpha(0) = alpha0,

and integrate to ``alpha(t) = -log(1 - k0 exp(c t))`` with
``k0 = 1 - exp(-alpha0)`` and

    x(t) = [log((1-k0)/(1-k0 e^{ct})) / (c k0) + 1/(e^{-ct}-k0) - 1/(1-k0)] (e^{-ct} - k0).

Using ``log((1-k0)/(1-k0 e^{ct})) = alpha(t) - alpha0`` and the conserved
level ``H0 = alpha0 + c (exp(alpha0) - 1)`` this is evaluated as

    1 - x(t) = (e^{-ct} - k0) (H0 - alpha(t)) / (c k0),

which keeps full relative precision in ``1 - x`` and whose second factor
changes sign exactly at the exit time. For ``alpha0 > 0``, ``alpha`` blows up at the singular time
``t_s = -log(k0)/c``; the factor ``e^{-ct} - k0`` is then computed as
``k0 expm1(c (t_s - t))`` so that the approach to ``t_s`` stays accurate.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..fluid import fluid_z_unclipped, t_star
from ..model import DomainError, NumericError, ParameterError

__all__ = [
    "ALPHA0_MAX",
    "HamTrajectory",
    "make_ham_trajectory",
    "invert_exit_time",
]

log = logging.getLogger(__name__)

ALPHA0_MAX = 700.0
EXIT_TOL = 1e-12
_SMALL_ALPHA0 = 1e-8


@dataclass(frozen=True)
class HamTrajectory:
    """Hamiltonian extremal started at ``x = 0`` with momentum ``alpha0``.

    Attributes
    ----------
    c, alpha0 : float
    k0 : float
        ``1 - exp(-alpha0)``.
    exit_time : float
        First time ``x`` reaches 1.
    singular_time : float or None
        Blow-up time of ``alpha`` when ``alpha0 > 0``.
    """

    c: float
    alpha0: float
    k0: float
    exit_time: float
    singular_time: Optional[float]

    # ---- evaluators -------------------------------------------------
    def alpha(self, t):
        """Momentum ``alpha(t) = -log(1 - k0 exp(c t))``; ``inf`` at and past the singular time."""
        t = np.asarray(t, dtype=float)
        c, a0 = self.c, self.alpha0
        if a0 == 0.0:
            out = np.zeros_like(t)
        elif a0 > 0.0:
            s = self.singular_time - t
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.where(s > 0, -np.log(-np.expm1(-c * np.maximum(s, 0.0))), np.inf)
        else:
            log_a = math.log(math.expm1(-a0))
            out = -np.logaddexp(0.0, log_a + c * t)
        return out if out.ndim else float(out)

    def _gap_factors(self, t):
        """Return ``(e^{-ct} - k0, bracket)`` with ``x(t) - 1 = product``.

        ``bracket = (alpha(t) - H0) / (c k0)`` where ``H0 = alpha0 + c expm1(alpha0)``
        is the Hamiltonian level; it vanishes exactly at the exit time.
        """
        c, a0, k0 = self.c, self.alpha0, self.k0
        t = np.asarray(t, dtype=float)
        if abs(a0) < _SMALL_ALPHA0:
            # (alpha - alpha0)/k0 = expm1(ct) + k0 expm1(2ct)/2 + O(k0^2)
            ratio = np.expm1(c * t) + 0.5 * k0 * np.expm1(2.0 * c * t)
            return np.exp(-c * t) - k0, ratio / c - math.exp(a0)
        if a0 > 0.0:
            s = np.maximum(self.singular_time - t, 0.0)
            front = k0 * np.expm1(c * s)
        else:
            front = np.exp(-c * t) - k0
        with np.errstate(invalid="ignore"):
            bracket = (self.alpha(t) - self.energy) / (c * k0)
        return front, bracket

    def gap(self, t):
        """``1 - x(t)``, computed without cancellation."""
        t = np.asarray(t, dtype=float)
        if self.alpha0 == 0.0:
            out = 1.0 - np.asarray(fluid_z_unclipped(self.c, t))
        else:
            front, bracket = self._gap_factors(t)
            with np.errstate(invalid="ignore"):
                out = np.where(front == 0.0, 0.0, -front * bracket)
            # the initial condition x(0) = 0 holds exactly
            out = np.where(t == 0.0, 1.0, out)
        return out if out.ndim else float(out)

    def x(self, t):
        """Explored fraction along the extremal (unclipped, valid up to the exit time)."""
        out = 1.0 - np.asarray(self.gap(t))
        return out if out.ndim else float(out)

    def x_hat(self, t):
        """``x(t)`` clipped to [0, 1] and frozen at 1 from the exit time on."""
        t = np.asarray(t, dtype=float)
        inside = t < self.exit_time
        out = np.ones_like(t)
        if np.any(inside):
            out[inside] = np.clip(self.x(t[inside]), 0.0, 1.0)
        return out if out.ndim else float(out)

    def x_dot(self, t):
        """Velocity from Hamilton's equations, ``1 + c (1 - x) exp(alpha)``."""
        t = np.asarray(t, dtype=float)
        out = 1.0 + self.c * np.asarray(self.gap(t)) * np.exp(self.alpha(t))
        return out if out.ndim else float(out)

    def above_one(self, t: float) -> bool:
        """Whether ``x(t) >= 1``, decided from the sign of the factorised gap."""
        if self.alpha0 > 0.0 and t >= self.singular_time:
            return True
        if self.alpha0 == 0.0:
            return t >= t_star(self.c)
        front, bracket = self._gap_factors(np.float64(t))
        return bool(front <= 0.0 or bracket >= 0.0)

    def hamiltonian(self, t):
        """``H(x(t), alpha(t))``, conserved along the extremal for ``x < 1``."""
        a = self.alpha(t)
        return a + self.c * np.asarray(self.gap(t)) * np.expm1(a)

    @property
    def energy(self) -> float:
        """Level of the Hamiltonian, ``H(0, alpha0)``."""
        return self.alpha0 + self.c * math.expm1(self.alpha0)


def _k0_and_singular(c: float, alpha0: float):
    k0 = -math.expm1(-alpha0)
    ts = None
    if alpha0 > 0.0:
        # -log(k0)/c = -log1p(-e^{-alpha0})/c, accurate when k0 -> 1
        ts = -math.log1p(-math.exp(-alpha0)) / c
    return k0, ts


def _bisect_exit(traj: HamTrajectory, lo: float, hi: float, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if traj.above_one(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def make_ham_trajectory(c: float, alpha0: float, tol: float = EXIT_TOL) -> HamTrajectory:
    """Build the extremal with initial momentum ``alpha0`` and locate its exit time.

    The exit time is found by bisection on ``x(t) = 1`` to absolute tolerance
    ``tol`` over ``[0, min(1, t_s)]`` (``alpha0 > 0``) or ``[0, 1]``; the upper
    end is pushed out in steps of 0.5 if ``x(1) < 1``.

    Raises
    ------
    ParameterError
        If ``c <= 0`` or ``|alpha0| > 700``.
    NumericError
        If no bracket for the exit time is found.
    """
    c = float(c)
    alpha0 = float(alpha0)
    if not (c > 0 and math.isfinite(c)):
        raise ParameterError(f"c must be a finite positive real, got {c!r}")
    if not abs(alpha0) <= ALPHA0_MAX:
        raise ParameterError(f"|alpha0| must be <= {ALPHA0_MAX:g}, got {alpha0!r}")
    k0, ts = _k0_and_singular(c, alpha0)
    if alpha0 == 0.0:
        return HamTrajectory(c, 0.0, 0.0, t_star(c), None)
    probe = HamTrajectory(c, alpha0, k0, math.nan, ts)
    hi = 1.0 if ts is None else min(1.0, ts)
    if not probe.above_one(hi):
        if alpha0 > 0.0:
            raise NumericError(
                f"x(t) stays below 1 up to t={hi!r} for c={c}, alpha0={alpha0} "
                f"(singular time {ts!r})")
        while not probe.above_one(hi):
            log.warning("exit time beyond t=%g for c=%g, alpha0=%g; extending bracket",
                        hi, c, alpha0)
            hi += 0.5
            if hi > 10.0:
                raise NumericError(f"no exit time found before t=10 for c={c}, alpha0={alpha0}")
    exit_time = _bisect_exit(probe, 0.0, hi, tol)
    return HamTrajectory(c, alpha0, k0, exit_time, ts)


def invert_exit_time(c: float, T: float) -> float:
    """Initial momentum whose extremal exits exactly at time ``T``.

    Exit time is strictly decreasing in ``alpha0``, so ``alpha0`` is found by
    bisection on the sign of ``x_{alpha0}(T) - 1``, with the bracket doubled
    from ``[-1, 1]`` up to ``[-700, 700]``. ``alpha0 < 0`` iff ``T > T*``.

    Raises
    ------
    DomainError
        If ``T`` is outside the attainable range ``(T_min, 1)``.
    """
    c = float(c)
    T = float(T)
    if not (c > 0 and math.isfinite(c)):
        raise ParameterError(f"c must be a finite positive real, got {c!r}")
    if not 0.0 < T < 1.0:
        raise DomainError(f"exit time must lie in (0, 1), got {T!r}")

    def reached(a0: float) -> bool:
        k0, ts = _k0_and_singular(c, a0)
        if a0 == 0.0:
            return T >= t_star(c)
        return HamTrajectory(c, a0, k0, math.nan, ts).above_one(T)

    ts_c = t_star(c)
    if T == ts_c:
        return 0.0
    lo, hi = -1.0, 1.0
    while reached(lo):
        if lo <= -ALPHA0_MAX:
            raise DomainError(f"T={T!r} is not attainable for c={c} (needs alpha0 < -{ALPHA0_MAX:g})")
        lo = max(2.0 * lo, -ALPHA0_MAX)
    while not reached(hi):
        if hi >= ALPHA0_MAX:
            raise DomainError(f"T={T!r} is below the attainable exit times for c={c}")
        hi = min(2.0 * hi, ALPHA0_MAX)
    # invariant: reached(hi) and not reached(lo)
    for _ in range(2000):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if reached(mid):
            hi = mid
        else:
            lo = mid
    a0 = hi
    if a0 != 0.0 and (a0 < 0.0) != (T > ts_c):
        raise NumericError(f"sign of alpha0={a0!r} inconsistent with T={T!r}, T*={ts_c!r}")
    return a0
