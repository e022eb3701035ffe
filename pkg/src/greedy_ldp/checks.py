"""Invariant checks shared by the ``verify`` command and the test-suite.

Every check returns a :class:`CheckResult`; none of them raises on a
failed comparison.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate, optimize

from .chain import exact_stop_time_distribution, simulate_stop_times
from .explorer import enumerate_stop_time_law
from .fluid import fluid_z, t_star
from .ldp import (
    cost_L,
    cost_L_value,
    hamiltonian_H,
    lambert_w0,
    make_ham_trajectory,
    poisson_rate,
    rate_F,
    sigma1_star,
    sigma2_star,
)
from .model import ModelParams, derive_seed

__all__ = [
    "CheckResult",
    "CHECKS",
    "QUICK",
    "run_checks",
    "numeric_conjugate_L",
    "numeric_conjugate_H",
    "ode_exit_time",
    "lagrangian_rate_quad",
    "el_residual",
]

CONSERVATION_ALPHA0 = (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)
CONSERVATION_C = (0.5, 1.0, 3.0)
DUAL_ALPHA0 = (-1.0, -0.5, 0.5, 1.0)
DUAL_C = (0.5, 1.0, 3.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: {self.detail} ({self.seconds:.2f}s)"


# ---------------------------------------------------------------- oracles

def numeric_conjugate_L(c: float, x: float, beta: float) -> float:
    """``sup_alpha {alpha beta - H(x, alpha)}`` by bounded scalar maximisation."""
    res = optimize.minimize_scalar(lambda a: hamiltonian_H(c, x, a) - a * beta,
                                   bounds=(-40.0, 40.0), method="bounded",
                                   options={"xatol": 1e-12})
    return -float(res.fun)


def numeric_conjugate_H(c: float, x: float, alpha: float) -> float:
    """``sup_beta {alpha beta - L(x, beta)}`` over ``beta >= 1`` (``beta = 1 + e^s``)."""
    def neg(s):
        beta = 1.0 + math.exp(s)
        return cost_L_value(c, x, beta) - alpha * beta
    res = optimize.minimize_scalar(neg, bounds=(-60.0, 5.0), method="bounded",
                                   options={"xatol": 1e-12})
    edge = alpha - cost_L_value(c, x, 1.0)
    return max(-float(res.fun), edge)


def ode_exit_time(c: float, alpha0: float) -> float:
    """Exit time from an adaptive Runge–Kutta integration of Hamilton's equations."""
    def rhs(t, y):
        x, a = y
        return [1.0 + c * (1.0 - x) * math.exp(a), c * math.expm1(a)]

    def hit(t, y):
        return y[0] - 1.0
    hit.terminal = True
    hit.direction = 1
    sol = integrate.solve_ivp(rhs, (0.0, 2.0), [0.0, alpha0], method="DOP853",
                              events=hit, rtol=1e-13, atol=1e-14)
    if not sol.t_events[0].size:
        raise RuntimeError(f"ODE oracle found no exit for c={c}, alpha0={alpha0}")
    return float(sol.t_events[0][0])


def lagrangian_rate_quad(c: float, alpha0: float) -> float:
    """``int L(x, x') dt`` along the extremal with QUADPACK, ``x'`` from Hamilton's equations."""
    traj = make_ham_trajectory(c, alpha0)

    def f(t):
        x = min(float(traj.x(t)), 1.0)
        beta = 1.0 + c * (1.0 - x) * math.exp(float(traj.alpha(t)))
        return cost_L_value(c, x, beta)
    val, _ = integrate.quad(f, 0.0, traj.exit_time, epsabs=1e-13, epsrel=1e-13, limit=500)
    return val


def el_residual(c: float, alpha0: float, h: float = 1e-4, npts: int = 400) -> float:
    """Max Euler–Lagrange residual along ``x_{alpha0}`` on ``[0.01, T - 0.01]`` (central differences)."""
    traj = make_ham_trajectory(c, alpha0)
    lo, hi = 0.01, traj.exit_time - 0.01
    if hi <= lo:
        return 0.0
    t = np.linspace(lo, hi, npts)
    xm, x0, xp = traj.x(t - h), traj.x(t), traj.x(t + h)
    v = (xp - xm) / (2 * h)
    acc = (xp - 2 * x0 + xm) / h ** 2
    r = (x0 - 1.0) * acc + (c * x0 - (1.0 + c)) * v - c * x0 + (1.0 + c)
    return float(np.max(np.abs(r)))


# ----------------------------------------------------------------- checks

def check_small_n_enumeration(**_) -> CheckResult:
    law = enumerate_stop_time_law(3, Fraction(1, 3))
    want = {1: Fraction(1, 9), 2: Fraction(16, 27), 3: Fraction(8, 27)}
    dist = exact_stop_time_distribution(ModelParams(1.0, 3))
    err = max(abs(dist.pmf[k - 1] - float(want[k])) for k in want)
    ok = law == want and err < 1e-12
    return CheckResult("small-n-enumeration", ok,
                       f"enumeration exact={law == want}, DP max err={err:.2e}")


def check_legendre(quick: bool = False, **_) -> CheckResult:
    cs = (0.5, 1.0, 2.0)
    xs = np.round(np.arange(0.0, 0.95, 0.1), 10)
    betas = np.linspace(1.01, 6.0, 12 if quick else 50)
    alphas = np.linspace(-3.0, 3.0, 13 if quick else 61)
    worst_l = worst_h = 0.0
    for c in cs:
        for x in xs:
            for b in betas:
                worst_l = max(worst_l, abs(float(cost_L(c, x, b)) - numeric_conjugate_L(c, x, b)))
            for a in alphas:
                worst_h = max(worst_h, abs(hamiltonian_H(c, x, a) - numeric_conjugate_H(c, x, a)))
    ok = worst_l < 1e-6 and worst_h < 1e-6
    return CheckResult("legendre-duality", ok,
                       f"max|L - H*|={worst_l:.2e}, max|H - L*|={worst_h:.2e} (tol 1e-6)")


def check_poisson(**_) -> CheckResult:
    worst = 0.0
    for c in (0.5, 1.0, 2.0):
        for x in np.linspace(0.0, 0.95, 20):
            for b in np.linspace(1.001, 8.0, 40):
                worst = max(worst, abs(float(cost_L(c, x, b))
                                       - float(poisson_rate(c * (1 - x), b - 1))))
    return CheckResult("poisson-identity", worst == 0.0, f"max diff={worst:.2e}")


def check_conservation(c=None, alpha0=None, **_) -> CheckResult:
    cs = CONSERVATION_C if c is None else (c,)
    a0s = CONSERVATION_ALPHA0 if alpha0 is None else (alpha0,)
    worst = 0.0
    for cc in cs:
        for a0 in a0s:
            traj = make_ham_trajectory(cc, a0)
            t = np.linspace(0.0, traj.exit_time, 2001)
            t = t[traj.x(t) < 1.0]
            h0 = hamiltonian_H(cc, 0.0, a0)
            worst = max(worst, float(np.max(np.abs(traj.hamiltonian(t) - h0))))
    return CheckResult("conservation", worst < 1e-8, f"sup|H - H0|={worst:.2e} (tol 1e-8)")


def check_dual_route(c=None, alpha0=None, **_) -> CheckResult:
    cs = DUAL_C if c is None else (c,)
    a0s = DUAL_ALPHA0 if alpha0 is None else (alpha0,)
    worst_f = worst_t = 0.0
    for cc in cs:
        for a0 in a0s:
            worst_f = max(worst_f, abs(float(rate_F(cc, a0)) - lagrangian_rate_quad(cc, a0)))
            worst_t = max(worst_t, abs(make_ham_trajectory(cc, a0).exit_time
                                       - ode_exit_time(cc, a0)))
    ok = worst_f < 1e-8 and worst_t < 1e-8
    return CheckResult("dual-route", ok,
                       f"max|F_H - F_L|={worst_f:.2e}, max|T - T_ode|={worst_t:.2e} (tol 1e-8)")


def check_euler_lagrange(c=None, alpha0=None, **_) -> CheckResult:
    cs = DUAL_C if c is None else (c,)
    a0s = DUAL_ALPHA0 if alpha0 is None else (alpha0,)
    worst = max(el_residual(cc, a0) for cc in cs for a0 in a0s)
    return CheckResult("euler-lagrange", worst < 1e-4, f"max residual={worst:.2e} (tol 1e-4)")


def check_monotonicity(c=None, **_) -> CheckResult:
    cc = 1.0 if c is None else c
    a0s = np.linspace(-3.0, 2.0, 21)
    bad = 0
    for a_lo, a_hi in zip(a0s[:-1], a0s[1:]):
        lo, hi = make_ham_trajectory(cc, a_lo), make_ham_trajectory(cc, a_hi)
        t = np.linspace(1e-3, hi.exit_time, 200, endpoint=False)
        if not (np.all(lo.x(t) < hi.x(t)) and lo.exit_time > hi.exit_time):
            bad += 1
    return CheckResult("monotonicity", bad == 0, f"{20 - bad}/20 ordered pairs ordered")


def check_dominance(c=None, **_) -> CheckResult:
    cs = CONSERVATION_C if c is None else (c,)
    bad = 0
    for cc in cs:
        for a0 in (-20.0, -5.0, -2.0, -0.5, 0.0, 0.5, 2.0):
            traj = make_ham_trajectory(cc, a0)
            t = np.linspace(1e-3, traj.exit_time, 300, endpoint=False)
            bad += int(not np.all(traj.x(t) > t))
    return CheckResult("clock-dominance", bad == 0, f"{bad} extremals with x(t) <= t")


def check_F_shape(c=None, **_) -> CheckResult:
    cc = 1.0 if c is None else c
    grid = [a for a in np.linspace(-3.0, 3.0, 25) if abs(a) >= 0.05]
    vals = [float(rate_F(cc, a)) for a in grid]
    neg = [v for a, v in zip(grid, vals) if a < 0]
    mono_neg = all(x > y for x, y in zip(neg[:-1], neg[1:]))
    ok = float(rate_F(cc, 0.0)) == 0.0 and min(vals) > 1e-6 and mono_neg
    return CheckResult("F-shape", ok,
                       f"F(0)=0, min F on |a|>=0.05 = {min(vals):.3e}, decreasing on a<0: {mono_neg}")


def check_small_alpha(c=None, **_) -> CheckResult:
    cc = 1.0 if c is None else c
    ok = True
    gaps = []
    for sign in (-1.0, 1.0):
        prev = math.inf
        for a0 in (1e-1, 1e-2, 1e-3):
            traj = make_ham_trajectory(cc, sign * a0)
            t = np.linspace(0.0, 1.0, 2001)
            gap = float(np.max(np.abs(traj.x_hat(t) - fluid_z(cc, t))))
            gaps.append(gap)
            ok &= gap < prev
            prev = gap
    return CheckResult("alpha0-continuity", ok, "sup gaps " + ", ".join(f"{g:.1e}" for g in gaps))


def check_dp(quick: bool = False, **_) -> CheckResult:
    worst_sum = 0.0
    mean_ok = True
    for n in (range(1, 201, 7) if quick else range(1, 201)):
        for c in (0.5, 1.0, 2.0, 5.0):
            if c > n:
                continue
            d = exact_stop_time_distribution(ModelParams(c, n))
            worst_sum = max(worst_sum, abs(float(d.pmf.sum()) - 1.0))
            m = d.mean()
            mean_ok &= n / (1 + c) - 1e-9 <= m <= n + 1e-9
    reps = 100_000 if quick else 1_000_000
    d = exact_stop_time_distribution(ModelParams(1.0, 50))
    stops = simulate_stop_times(ModelParams(1.0, 50), reps, derive_seed(2024, 50))
    emp = np.bincount(stops, minlength=51)[1:] / reps
    tv = 0.5 * float(np.abs(emp - d.pmf).sum())
    tv_tol = 0.01 if quick else 0.005
    ok = worst_sum < 1e-12 and mean_ok and tv < tv_tol
    return CheckResult("dp-consistency", ok,
                       f"max|sum pmf - 1|={worst_sum:.1e}, mean bounds {mean_ok}, "
                       f"TV(MC {reps}, DP)={tv:.4f} (tol {tv_tol})")


def check_bound_values(**_) -> CheckResult:
    import mpmath
    with mpmath.workdps(40):
        w1 = mpmath.lambertw(1).real
        refs = {
            "W(1)": (lambert_w0(1.0), float(w1)),
            "sigma1(1)": (sigma1_star(1.0), float(w1 + w1 ** 2 / 2)),
            "sigma1(e-)": (sigma1_star(math.e - 1e-12), float(mpmath.mpf(1.5) / mpmath.e)),
            "sigma2(3)": (sigma2_star(3.0), float(2 * mpmath.log(3) / 3)),
        }
    worst = max(abs(a - b) for a, b in refs.values())
    return CheckResult("bound-values", worst < 1e-9, f"max err={worst:.1e} (tol 1e-9)")


def check_t_star(**_) -> CheckResult:
    grid = np.linspace(0.05, 10.0, 200)
    ts = np.array([t_star(c) for c in grid])
    ok = bool(np.all((ts > 0) & (ts < 1)) and np.all(np.diff(ts) < 0))
    err = max(abs(fluid_z(c, t_star(c)) - 1.0) for c in grid)
    return CheckResult("fluid-hitting-time", ok and err == 0.0,
                       f"T* in (0,1) and decreasing: {ok}; max|z(T*)-1|={err:.1e}")


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "enumeration": check_small_n_enumeration,
    "legendre": check_legendre,
    "poisson": check_poisson,
    "conservation": check_conservation,
    "dual-route": check_dual_route,
    "euler-lagrange": check_euler_lagrange,
    "monotonicity": check_monotonicity,
    "dominance": check_dominance,
    "F-shape": check_F_shape,
    "alpha0-continuity": check_small_alpha,
    "dp": check_dp,
    "bounds": check_bound_values,
    "t-star": check_t_star,
}

QUICK = tuple(CHECKS)


def run_checks(names=None, quick: bool = False, **opts) -> list[CheckResult]:
    out = []
    for name in (names or CHECKS):
        t0 = time.perf_counter()
        res = CHECKS[name](quick=quick, **opts)
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out
