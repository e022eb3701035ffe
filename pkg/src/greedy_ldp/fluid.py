"""Macroscopic behaviour of the exploration: fluid limit, hitting time, CLT variance."""

from __future__ import annotations

import math

import numpy as np

from .model import ParameterError

__all__ = ["FluidCurve", "fluid_z", "fluid_z_unclipped", "t_star", "clt_sigma2"]

_SERIES_C = 1e-6


def _check_c(c):
    c = float(c)
    if not math.isfinite(c) or c <= 0.0:
        raise ParameterError(f"c must be a finite positive real, got {c!r}")
    return c


def fluid_z_unclipped(c, t):
    """Solution of ``z' = 1 + c (1 - z)``, ``z(0) = 0``, without the cap at 1."""
    c = _check_c(c)
    t = np.asarray(t, dtype=float)
    if c < _SERIES_C:
        # (1+c)/c (1 - e^{-ct}) = (1+c)(t - c t^2/2 + c^2 t^3/6 - ...)
        out = (1.0 + c) * t * (1.0 - c * t / 2.0 + (c * t) ** 2 / 6.0)
    else:
        out = -(1.0 + c) / c * np.expm1(-c * t)
    return out if out.ndim else float(out)


def fluid_z(c, t):
    """Fluid limit ``min(z(t), 1)`` with ``z(t) = (1+c)/c (1 - exp(-c t))``.

    Parameters
    ----------
    c : float
        Mean degree, ``c > 0``.
    t : float or array_like
        Time(s) ``t >= 0``.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ParameterError("fluid_z needs t >= 0")
    out = np.minimum(fluid_z_unclipped(c, t_arr), 1.0)
    # exact 1 at and after the hitting time, immune to rounding in expm1
    out = np.where(t_arr >= t_star(c), 1.0, out)
    return out if out.ndim else float(out)


def t_star(c) -> float:
    """Hitting time of 1 by the fluid limit, ``log(1 + c) / c``."""
    c = _check_c(c)
    return math.log1p(c) / c


def clt_sigma2(c) -> float:
    """Limiting variance of ``sqrt(N) (T_N/N - T*)``: ``c / (2 (c+1)^2)``."""
    c = _check_c(c)
    return c / (2.0 * (c + 1.0) ** 2)


class FluidCurve:
    """The deterministic curve ``t -> min(z(t), 1)`` for a fixed ``c``."""

    def __init__(self, c):
        self.c = _check_c(c)

    def __call__(self, t):
        return fluid_z(self.c, t)

    @property
    def t_star(self) -> float:
        return t_star(self.c)

    @property
    def sigma2(self) -> float:
        return clt_sigma2(self.c)

    def __repr__(self):
        return f"FluidCurve(c={self.c!r})"
