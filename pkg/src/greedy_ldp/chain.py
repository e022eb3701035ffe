"""One-dimensional Markov chain of explored-vertex counts and the exact law of its stopping time.

The chain is ``Z_0 = 0`` and ``Z_{k+1} = Z_k + 1 + zeta`` with
``zeta ~ Binomial(n - Z_k - 1, c/n)``; it is absorbed at ``n`` after
``T`` steps, and ``T`` is the size of the greedy independent set.
"""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln, logsumexp

from .io import fmt_float
from .model import (
    NEG_INF,
    ExtReal,
    ModelParams,
    ParameterError,
    ResourceError,
    ScaledPath,
    rng_from_seed,
)

__all__ = [
    "ChainTrajectory",
    "StopTimeDist",
    "DEFAULT_DP_CAP",
    "DP_CAP_ENV",
    "dp_cap",
    "simulate_chain",
    "simulate_stop_times",
    "scaled_path",
    "exact_stop_time_distribution",
    "threshold_index",
    "tail_log_prob",
    "write_dist_csv",
    "read_dist_csv",
]

DEFAULT_DP_CAP = 2000
DP_CAP_ENV = "GREEDY_LDP_DP_CAP"

# per-row truncation of binomial terms relative to the row maximum
_BINOM_REL_CUTOFF = math.log(1e-30)


@dataclass(frozen=True)
class ChainTrajectory:
    n: int
    z: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=np.int64)
        if z.ndim != 1 or z.size < 1 or z[0] != 0:
            raise ParameterError("trajectory must start at Z_0 = 0")
        if z[-1] != self.n:
            raise ParameterError("trajectory must end at Z_T = n")
        if np.any(np.diff(z) < 1):
            raise ParameterError("trajectory must be strictly increasing")
        z.flags.writeable = False
        object.__setattr__(self, "z", z)

    @property
    def stop_time(self) -> int:
        return self.z.size - 1


@dataclass(frozen=True)
class StopTimeDist:
    """Exact law of the stopping time on ``k = 1..n``.

    ``pmf[k-1]`` and ``log_pmf[k-1]`` refer to ``P(T = k)``. ``log_pmf`` is
    accurate far below the double-precision underflow limit of ``pmf``.
    """

    n: int
    c: float
    log_pmf: np.ndarray

    @property
    def k(self) -> np.ndarray:
        return np.arange(1, self.n + 1)

    @property
    def pmf(self) -> np.ndarray:
        return np.exp(self.log_pmf)

    def mean(self) -> float:
        return float(np.dot(self.k, self.pmf))


def dp_cap() -> int:
    """Size cap for the exact DP, overridable through ``GREEDY_LDP_DP_CAP``."""
    raw = os.environ.get(DP_CAP_ENV)
    if raw is None or raw == "":
        return DEFAULT_DP_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ParameterError(f"{DP_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ParameterError(f"{DP_CAP_ENV} must be positive")
    return cap


def _params_with_n(params) -> ModelParams:
    if not isinstance(params, ModelParams):
        raise ParameterError("expected ModelParams")
    params.require_n()
    return params


def simulate_chain(params: ModelParams, seed: int) -> ChainTrajectory:
    """Run one trajectory of the exploration chain.

    Binomial draws come from numpy's generator, which uses inversion for
    small means and the BTPE rejection sampler otherwise.
    """
    params = _params_with_n(params)
    n, p = params.n, params.p
    rng = rng_from_seed(seed)
    z = [0]
    cur = 0
    while cur < n:
        remaining = n - cur - 1
        cur += 1 + (int(rng.binomial(remaining, p)) if remaining > 0 else 0)
        z.append(cur)
    return ChainTrajectory(n=n, z=np.array(z, dtype=np.int64))


def simulate_stop_times(params: ModelParams, reps: int, seed: int,
                        return_paths: bool = False):
    """Simulate ``reps`` independent chains in lockstep.

    Returns the stop times (and, with ``return_paths``, an ``(reps, n+1)``
    array whose row ``r`` holds ``Z_0, Z_1, ...`` padded with ``n``). This is
    the vectorised counterpart of :func:`simulate_chain` for large Monte
    Carlo batches; it uses a single generator stream for the whole batch.
    """
    params = _params_with_n(params)
    n, p = params.n, params.p
    rng = rng_from_seed(seed)
    z = np.zeros(reps, dtype=np.int64)
    stop = np.zeros(reps, dtype=np.int64)
    paths = None
    if return_paths:
        paths = np.full((reps, n + 1), n, dtype=np.int64)
        paths[:, 0] = 0
    k = 0
    alive = np.arange(reps)
    while alive.size:
        k += 1
        zc = z[alive]
        jumps = 1 + rng.binomial(n - zc - 1, p)
        zc = zc + jumps
        z[alive] = zc
        if paths is not None:
            paths[alive, k] = zc
        done = zc >= n
        stop[alive[done]] = k
        alive = alive[~done]
    if return_paths:
        return stop, paths
    return stop


def scaled_path(traj: ChainTrajectory) -> ScaledPath:
    """Step path ``t -> Z_{floor(n t)} / n`` on [0, 1] (constant 1 after the stop time)."""
    n = traj.n
    times = np.arange(traj.stop_time + 1, dtype=float) / n
    values = traj.z.astype(float) / n
    values[-1] = 1.0
    if times[-1] < 1.0:
        times = np.append(times, 1.0)
        values = np.append(values, 1.0)
    return ScaledPath(times, values, "step")


def _binomial_log_pmf_row(m: int, log_p: float, log_q: float) -> tuple[int, np.ndarray]:
    """Log pmf of Binomial(m, p), truncated to the window above the relative cutoff.

    Returns ``(j0, logs)`` with ``logs[i] = log P(zeta = j0 + i)``.
    """
    if m == 0:
        return 0, np.zeros(1)
    j = np.arange(m + 1, dtype=float)
    logs = (gammaln(m + 1.0) - gammaln(j + 1.0) - gammaln(m - j + 1.0)
            + j * log_p + (m - j) * log_q)
    keep = np.nonzero(logs >= logs.max() + _BINOM_REL_CUTOFF)[0]
    lo, hi = keep[0], keep[-1]
    # the jump to n (j = m) is what feeds absorption; always keep it
    if m - hi <= 2:
        hi = m
    return int(lo), logs[lo:hi + 1]


class _LogKernel:
    """Transition kernel in log space, stored by target state.

    Entry ``i`` moves mass from ``src[i]`` to ``dst[i]`` with log-probability
    ``logw[i]``; entries are sorted by target so that per-target reductions
    are contiguous segments starting at ``starts``.
    """

    def __init__(self, n: int, p: float):
        log_p = math.log(p)
        log_q = math.log1p(-p) if p < 1.0 else -math.inf
        dst, src, logw = [], [], []
        for z in range(n):
            m = n - z - 1
            if p == 1.0:
                j0, logs = m, np.zeros(1)
            else:
                j0, logs = _binomial_log_pmf_row(m, log_p, log_q)
            dst.append(z + 1 + j0 + np.arange(logs.size))
            src.append(np.full(logs.size, z))
            logw.append(logs)
        dst = np.concatenate(dst)
        src = np.concatenate(src)
        logw = np.concatenate(logw)
        order = np.lexsort((src, dst))
        self.src = src[order]
        self.logw = logw[order]
        dst = dst[order]
        self.starts = np.flatnonzero(np.r_[True, dst[1:] != dst[:-1]])
        self.targets = dst[self.starts]
        self.segment = np.repeat(np.arange(self.starts.size),
                                 np.diff(np.r_[self.starts, dst.size]))

    def step(self, log_state: np.ndarray) -> np.ndarray:
        terms = log_state[self.src] + self.logw
        top = np.maximum.reduceat(terms, self.starts)
        alive = np.isfinite(top)
        shift = np.where(alive, top, 0.0)
        sums = np.add.reduceat(np.exp(terms - shift[self.segment]), self.starts)
        out = np.full(log_state.size, -np.inf)
        out[self.targets[alive]] = shift[alive] + np.log(sums[alive])
        return out


def exact_stop_time_distribution(params: ModelParams, cap: Optional[int] = None) -> StopTimeDist:
    """Exact law of the stopping time by forward dynamic programming.

    ``P_0 = delta_0`` and ``P_{k+1}(z') = sum_z P_k(z) P(z + 1 + zeta = z')``
    over the transient states; the mass entering ``n`` at step ``k`` is
    ``P(T = k)``. The whole recursion runs in log space (log-sum-exp per
    target state), so every state keeps full relative precision, including
    probabilities far below the double-precision underflow limit.

    Raises
    ------
    ResourceError
        If ``n`` exceeds the DP cap (default 2000, see :func:`dp_cap`).
    """
    params = _params_with_n(params)
    n, c = params.n, params.c
    cap = dp_cap() if cap is None else cap
    if n > cap:
        raise ResourceError(f"exact DP limited to n <= {cap} (got n={n}); "
                            f"raise it via {DP_CAP_ENV}")
    kernel = _LogKernel(n, params.p)
    state = np.full(n + 1, -np.inf)
    state[0] = 0.0
    log_pmf = np.full(n, -np.inf)
    for k in range(1, n + 1):
        state = kernel.step(state)
        log_pmf[k - 1] = state[n]
        state[n] = -np.inf
        if not np.isfinite(state).any():
            break
    # renormalise the (tiny) truncation loss so the pmf sums to one
    log_pmf -= logsumexp(log_pmf)
    return StopTimeDist(n=n, c=c, log_pmf=log_pmf)


def threshold_index(n: int, threshold: float, side: str) -> int:
    """Integer cut for ``T/n >= threshold`` (``ceil``) or ``T/n <= threshold`` (``floor``).

    When ``n * threshold`` is an integer up to rounding (relative 1e-12) the
    integer itself is used, so e.g. ``n=10, threshold=0.3`` gives 3 on both sides.
    """
    x = n * float(threshold)
    r = round(x)
    if abs(x - r) <= 1e-12 * max(1.0, abs(x)):
        return int(r)
    if side == "upper":
        return math.ceil(x)
    if side == "lower":
        return math.floor(x)
    raise ParameterError(f"side must be 'upper' or 'lower', got {side!r}")


def tail_log_prob(dist: StopTimeDist, threshold: float, side: str) -> ExtReal:
    """Natural log of ``P(T/n >= threshold)`` (upper) or ``P(T/n <= threshold)`` (lower).

    An empty tail gives ``NEG_INF``; a tail holding the whole support gives 0.
    """
    if side not in ("upper", "lower"):
        raise ParameterError(f"side must be 'upper' or 'lower', got {side!r}")
    n = dist.n
    cut = threshold_index(n, threshold, side)
    if side == "upper":
        lo, hi = max(cut, 1), n
    else:
        lo, hi = 1, min(cut, n)
    if lo > hi:
        return NEG_INF
    if lo == 1 and hi == n:
        return ExtReal(0.0)
    seg = dist.log_pmf[lo - 1:hi]
    if np.all(np.isneginf(seg)):
        return NEG_INF
    return ExtReal(min(float(logsumexp(seg)), 0.0))


def write_dist_csv(dist: StopTimeDist, fh=None) -> Optional[str]:
    """Write ``k,pmf,log_pmf`` rows with 17 significant digits.

    Returns the text if ``fh`` is None.
    """
    out = io.StringIO() if fh is None else fh
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["k", "pmf", "log_pmf"])
    for k, lp in zip(dist.k, dist.log_pmf):
        w.writerow([int(k), fmt_float(math.exp(lp)), fmt_float(lp)])
    if fh is None:
        return out.getvalue()
    return None


def read_dist_csv(fh, c: float) -> StopTimeDist:
    rows = list(csv.DictReader(fh))
    log_pmf = np.array([float(r["log_pmf"]) for r in rows])
    return StopTimeDist(n=len(rows), c=float(c), log_pmf=log_pmf)
