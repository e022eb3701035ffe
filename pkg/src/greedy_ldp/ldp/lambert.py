"""Principal branch of the Lambert W function by Halley iteration."""

from __future__ import annotations

import math

from ..model import DomainError

__all__ = ["lambert_w0"]

_INV_E = math.exp(-1.0)


def _initial_guess(x: float) -> float:
    if x < -0.25:
        # branch-point series in p = sqrt(2 (e x + 1))
        p = math.sqrt(max(0.0, 2.0 * (math.e * x + 1.0)))
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p ** 3
    if x < 3.0:
        return math.log1p(x) * (1.0 - math.log1p(math.log1p(x)) / (2.0 + math.log1p(x)))
    lx = math.log(x)
    return lx - math.log(lx)


def lambert_w0(x: float, rtol: float = 1e-14, max_iter: int = 64) -> float:
    """Principal branch ``W0(x)``: the solution ``w >= -1`` of ``w exp(w) = x``.

    Raises
    ------
    DomainError
        If ``x < -1/e``.
    """
    x = float(x)
    if math.isnan(x) or x < -_INV_E:
        # allow the rounding slack of the float nearest -1/e
        if not (x < -_INV_E and x >= -_INV_E * (1.0 + 4e-16)):
            raise DomainError(f"lambert_w0 needs x >= -1/e, got {x!r}")
        return -1.0
    if x == 0.0:
        return 0.0
    if x == -_INV_E:
        return -1.0
    if math.isinf(x):
        return math.inf
    w = _initial_guess(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_new = w - step
        if w_new < -1.0:
            w_new = 0.5 * (w - 1.0)
        if abs(w_new - w) <= rtol * max(abs(w_new), 1e-300):
            return w_new
        w = w_new
    return w
