"""Tabular output (CSV / JSON) shared by the CLI and the export helpers."""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Optional, Sequence

import numpy as np

from .model import ExtReal, ParameterError, ScaledPath

__all__ = ["fmt_float", "write_table", "read_path_csv", "trajectory_rows"]


def fmt_float(x) -> str:
    """Locale-independent 17-significant-digit rendering; infinities as ``inf``/``-inf``."""
    if isinstance(x, ExtReal):
        x = float(x)
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _json_value(x):
    if isinstance(x, ExtReal):
        x = float(x)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isfinite(x):
        return float(fmt_float(x))
    return fmt_float(x)


def write_table(header: Sequence[str], rows: Iterable[Sequence], fh=None,
                fmt: str = "csv", meta: Optional[dict] = None) -> Optional[str]:
    """Write rows as CSV (header line first) or as JSON ``{"meta": ..., "rows": {col: [...]}}``.

    Returns the text when ``fh`` is None.
    """
    out = io.StringIO() if fh is None else fh
    rows = list(rows)
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt_float(v) for v in r])
    elif fmt == "json":
        cols = {h: [_json_value(r[i]) for r in rows] for i, h in enumerate(header)}
        json.dump({"meta": meta or {}, "rows": cols}, out, sort_keys=True, indent=1)
        out.write("\n")
    else:
        raise ParameterError(f"unknown output format {fmt!r}")
    return out.getvalue() if fh is None else None


def read_path_csv(fh) -> ScaledPath:
    """Read a ``t,value`` CSV into a piecewise-linear path.

    ``t`` must start at 0 and increase strictly; values must lie in [0, 1].
    """
    reader = csv.DictReader(fh)
    if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["t", "value"]:
        raise ParameterError("path file must have header 't,value'")
    ts, vs = [], []
    for row in reader:
        ts.append(float(row["t"]))
        vs.append(float(row["value"]))
    if not ts:
        raise ParameterError("path file has no rows")
    ts = np.array(ts)
    if np.any(np.diff(ts) <= 0):
        raise ParameterError("path times must be strictly increasing")
    return ScaledPath(ts, np.array(vs), "linear")


def trajectory_rows(traj, grid: np.ndarray):
    """Rows ``t, x, alpha, L_integrand`` along an extremal, frozen after its exit time.

    Past the exit time the path rests at ``x = 1`` (zero running cost) and
    ``alpha`` is reported at its exit value.
    """
    from .ldp.rates import rate_integrand

    grid = np.asarray(grid, dtype=float)
    t_eval = np.minimum(grid, traj.exit_time)
    x = traj.x_hat(grid)
    a = np.atleast_1d(traj.alpha(t_eval))
    inside = grid < traj.exit_time
    lint = np.zeros_like(grid)
    if np.any(inside):
        lint[inside] = rate_integrand(traj, grid[inside])
    return [(float(t), float(xi), float(ai), float(li))
            for t, xi, ai, li in zip(grid, x, a, lint)]
