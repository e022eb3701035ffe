"""Local cost ``L(x, beta)``, Hamiltonian ``H(x, alpha)`` and the Poisson Cramér rate.

``L`` is the price per unit time of moving at speed ``beta`` when a fraction
``x`` of the vertices is explored; ``H`` is its convex conjugate in the
second variable.
"""

from __future__ import annotations

import math

from ..model import POS_INF, ExtReal, ParameterError

__all__ = ["cost_L", "cost_L_value", "hamiltonian_H", "poisson_rate"]


def _check(c, x):
    if not c > 0 or not math.isfinite(c):
        raise ParameterError(f"c must be a finite positive real, got {c!r}")
    if not 0.0 <= x <= 1.0:
        raise ParameterError(f"x must lie in [0, 1], got {x!r}")


def cost_L_value(c: float, x: float, beta: float) -> float:
    """Float version of :func:`cost_L` (``math.inf`` outside the finite branches)."""
    _check(c, x)
    if x < 1.0:
        if beta > 1.0:
            u = beta - 1.0
            lam = c * (1.0 - x)
            return u * (math.log(u / lam) - 1.0) + lam
        if beta == 1.0:
            return c * (1.0 - x)
        return math.inf
    return 0.0 if beta == 0.0 else math.inf


def cost_L(c: float, x: float, beta: float) -> ExtReal:
    """Cost function.

    ============================  ==================================================
    ``x < 1`` and ``beta > 1``    ``(beta-1) [log((beta-1) / (c(1-x))) - 1] + c(1-x)``
    ``x < 1`` and ``beta = 1``    ``c (1 - x)``
    ``x = 1`` and ``beta = 0``    ``0``
    otherwise                     ``+inf``
    ============================  ==================================================
    """
    v = cost_L_value(c, x, beta)
    return POS_INF if v == math.inf else ExtReal(v)


def hamiltonian_H(c: float, x: float, alpha: float) -> float:
    """``alpha + c (1 - x) (exp(alpha) - 1)`` for ``x < 1`` and ``0`` at ``x = 1``."""
    _check(c, x)
    if x == 1.0:
        return 0.0
    return alpha + c * (1.0 - x) * math.expm1(alpha)


def poisson_rate(lam: float, u: float) -> ExtReal:
    """Cramér rate of the mean of Poisson(``lam``) variables at level ``u``."""
    if not lam > 0 or not math.isfinite(lam):
        raise ParameterError(f"lambda must be a finite positive real, got {lam!r}")
    if u < 0:
        return POS_INF
    if u == 0:
        return ExtReal(lam)
    return ExtReal(u * (math.log(u / lam) - 1.0) + lam)
