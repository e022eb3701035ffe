"""Command-line interface: ``greedy-ldp {simulate,dist,rate,bounds,verify}``.

Exit codes: 0 success, 1 failed verification, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .chain import exact_stop_time_distribution, simulate_chain, tail_log_prob
from .checks import CHECKS, run_checks
from .explorer import greedy_explore, sample_er_graph, verify_independent_maximal
from .io import read_path_csv, trajectory_rows, write_table
from .ldp import bound_rate, make_ham_trajectory, path_rate, rate_F, sigma1_star, sigma2_star, tail_rate
from .model import (
    DomainError,
    ModelParams,
    NumericError,
    ParameterError,
    ResourceError,
    derive_seed,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def _add_output(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output path ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="greedy-ldp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="simulate the exploration chain or explicit graphs")
    p.add_argument("mode", choices=("chain", "graph"))
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=_positive_int, default=1)
    p.add_argument("--paths", action="store_true", help="also emit the Z_k sequence")
    _add_output(p)

    p = sub.add_parser("dist", help="exact stop-time distribution")
    p.add_argument("mode", choices=("exact",))
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--tail", type=float, help="emit log P(T/n >= θ) or log P(T/n <= θ) instead")
    p.add_argument("--side", choices=("upper", "lower"), default="upper")
    _add_output(p)

    p = sub.add_parser("rate", help="large-deviation rates")
    rsub = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    q = rsub.add_parser("traj", help="extremal trajectory t, x, alpha, L")
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--alpha0", type=float, required=True)
    q.add_argument("--grid", type=_positive_int, default=201)
    _add_output(q)
    q = rsub.add_parser("F", help="F(alpha0) on a grid")
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--alpha0-min", type=float, required=True)
    q.add_argument("--alpha0-max", type=float, required=True)
    q.add_argument("--steps", type=_positive_int, required=True)
    _add_output(q)
    q = rsub.add_parser("tail", help="decay rate of the stop-time tails")
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--eps", type=float, required=True)
    q.add_argument("--side", choices=("upper", "lower"), required=True)
    _add_output(q)
    q = rsub.add_parser("path", help="rate of a piecewise-linear path from a 't,value' CSV")
    q.add_argument("--c", type=float, required=True)
    q.add_argument("--path-file", required=True)
    _add_output(q)

    p = sub.add_parser("bounds", help="rates of exceeding the independent-set bounds")
    p.add_argument("--c-min", type=float, required=True)
    p.add_argument("--c-max", type=float, required=True)
    p.add_argument("--steps", type=_positive_int, required=True)
    p.add_argument("--which", choices=("sigma1", "sigma2"), required=True)
    _add_output(p)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--quick", action="store_true")
    p.add_argument("--check", choices=sorted(CHECKS), action="append")
    p.add_argument("--c", type=float)
    p.add_argument("--alpha0", type=float)
    return parser


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    g = np.linspace(lo, hi, steps)
    scale = max(abs(lo), abs(hi), 1.0)
    g[np.abs(g) < 1e-12 * scale] = 0.0
    return g


def _emit(args, header, rows, meta):
    meta = dict(meta)
    if args.out == "-":
        write_table(header, rows, sys.stdout, args.format, meta)
    else:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            write_table(header, rows, fh, args.format, meta)


def _meta(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "format")}


def cmd_simulate(args) -> int:
    params = ModelParams(args.c, args.n)
    rows = []
    failed = 0
    for rep in range(args.reps):
        rep_seed = derive_seed(args.seed, rep)
        if args.mode == "chain":
            traj = simulate_chain(params, rep_seed)
            row = [rep, traj.stop_time]
            z = traj.z
        else:
            graph = sample_er_graph(params, derive_seed(rep_seed, 0))
            rec = greedy_explore(graph, derive_seed(rep_seed, 1))
            flags = verify_independent_maximal(graph, rec.active)
            failed += not (flags["independent"] and flags["maximal"])
            row = [rep, rec.stop_time, flags["independent"], flags["maximal"]]
            z = rec.z_steps
        if args.paths:
            row.append(" ".join(str(int(v)) for v in z))
        rows.append(row)
    header = ["replica", "stop_time"]
    if args.mode == "graph":
        header += ["independent", "maximal"]
    if args.paths:
        header.append("z")
    _emit(args, header, rows, _meta(args))
    if failed:
        print(f"{failed} replica(s) produced a non-maximal or dependent set", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_dist(args) -> int:
    dist = exact_stop_time_distribution(ModelParams(args.c, args.n))
    if args.tail is not None:
        if not 0.0 < args.tail < 1.0:
            raise DomainError("--tail must lie in (0, 1)")
        lp = tail_log_prob(dist, args.tail, args.side)
        _emit(args, ["threshold", "side", "log_prob"], [[args.tail, args.side, lp]], _meta(args))
        return EXIT_OK
    rows = [[int(k), math.exp(lp), lp] for k, lp in zip(dist.k, dist.log_pmf)]
    _emit(args, ["k", "pmf", "log_pmf"], rows, _meta(args))
    return EXIT_OK


def cmd_rate(args) -> int:
    if args.what == "traj":
        traj = make_ham_trajectory(args.c, args.alpha0)
        grid = np.linspace(0.0, 1.0, args.grid)
        _emit(args, ["t", "x", "alpha", "L_integrand"], trajectory_rows(traj, grid),
              {**_meta(args), "exit_time": traj.exit_time})
    elif args.what == "F":
        if args.alpha0_min > args.alpha0_max:
            raise DomainError("--alpha0-min must not exceed --alpha0-max")
        rows = [[a, rate_F(args.c, a).value] for a in _grid(args.alpha0_min, args.alpha0_max, args.steps)]
        _emit(args, ["alpha0", "F"], rows, _meta(args))
    elif args.what == "tail":
        r = tail_rate(args.c, args.eps, args.side)
        _emit(args, ["c", "eps", "side", "alpha0", "rate"],
              [[args.c, args.eps, args.side, r.optimizer, r.value]], _meta(args))
    else:
        with open(args.path_file, newline="", encoding="utf-8") as fh:
            path = read_path_csv(fh)
        r = path_rate(args.c, path)
        _emit(args, ["rate"], [[r.value]], _meta(args))
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.c_min > args.c_max:
        raise DomainError("--c-min must not exceed --c-max")
    sigma = sigma1_star if args.which == "sigma1" else sigma2_star
    grid = np.linspace(args.c_min, args.c_max, args.steps)
    for c in (grid[0], grid[-1]):
        sigma(c)  # domain check before any heavy work
    rows = []
    for c in grid:
        r = bound_rate(c, args.which)
        rows.append([c, sigma(c), r.value])
    _emit(args, ["c", "sigma_star", "rate"], rows, _meta(args))
    return EXIT_OK


def cmd_verify(args) -> int:
    opts = {}
    if args.c is not None:
        opts["c"] = args.c
    if args.alpha0 is not None:
        opts["alpha0"] = args.alpha0
    results = run_checks(args.check, quick=args.quick, **opts)
    for r in results:
        print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


_COMMANDS = {
    "simulate": cmd_simulate,
    "dist": cmd_dist,
    "rate": cmd_rate,
    "bounds": cmd_bounds,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParameterError, DomainError, ResourceError, NumericError, OSError) as exc:
        print(f"greedy-ldp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
