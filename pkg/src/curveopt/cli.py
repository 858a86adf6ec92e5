"""Command line front end.

Subcommands:
  run        one (problem, solver) pair, one-line summary, optional trace CSV
  bench      a (problems x solvers) grid, records CSV
  profile    performance profiles (CSV + SVG) from a records CSV
  check      closed-form theory constants for given flags
  figure-sc  the strongly convex comparison: distance-to-optimum traces for
             CS, CS_NMT(M=20), GD, M_HB, M_RES with optimal heavy-ball weights

Exit codes: 0 success, 1 solver failure status, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from .bench import (
    performance_profile,
    read_records,
    run_grid,
    write_profile_svg,
    write_profiles,
    write_records,
)
from .directions import DirectionParams
from .errors import CurveOptError, ConfigError, UsageError
from .problems import DEFAULT_SUITE_KEYS, from_key
from .search import SearchConfig
from .solvers import RunConfig, SolverKind, Status, solve
from .theory import ComplexityInputs, StrongConvexSpec, delta_low, iteration_bound, optimal_hb_params

_ALL_SOLVERS = [k.value for k in SolverKind]
_FIGURE_SOLVERS = ["CS", "CS_NMT", "GD", "M_HB", "M_RES"]


def _add_run_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=1.0, help="heavy-ball gradient weight")
    p.add_argument("--beta", type=float, default=0.9, help="heavy-ball momentum weight")
    p.add_argument("--gf", type=float, default=0.125, help="curve initial-velocity scale")
    p.add_argument("--delta0", type=float, default=1.0, help="initial trial step")
    p.add_argument("--sigma", type=float, default=1e-7, help="sufficient-decrease parameter")
    p.add_argument("--delta", type=float, default=0.5, help="backtracking factor")
    p.add_argument("--memory", type=int, default=20, help="nonmonotone window size M (CS_NMT)")
    p.add_argument("--eps", type=float, default=1e-3, help="stopping tolerance on ||grad||_inf")
    p.add_argument("--max-iters", type=int, default=5000)
    p.add_argument("--time-limit", type=float, default=120.0, help="seconds per run")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized problem instances (fixed problems ignore it)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curveopt", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one solver on one problem")
    p_run.add_argument("--problem", required=True, help="problem key, e.g. logistic:2")
    p_run.add_argument("--solver", required=True, help="one of " + ", ".join(_ALL_SOLVERS))
    _add_run_params(p_run)
    p_run.add_argument("--alpha-star", action="store_true",
                       help="use optimal heavy-ball weights from problem metadata")
    p_run.add_argument("--trace", metavar="PATH", help="write per-iteration trace CSV")
    p_run.add_argument("--pretty", action="store_true")

    p_bench = sub.add_parser("bench", help="run a (problems x solvers) grid")
    p_bench.add_argument("--problem", action="append", default=None,
                         help="problem key (repeatable); default: full suite")
    p_bench.add_argument("--solver", action="append", default=None,
                         help="solver tag (repeatable); default: all six")
    _add_run_params(p_bench)
    p_bench.add_argument("--jobs", type=int,
                         default=int(os.environ.get("CURVEOPT_JOBS", "1")),
                         help="worker pool size (env CURVEOPT_JOBS)")
    p_bench.add_argument("--out", default="records.csv", help="records CSV path")
    p_bench.add_argument("--pretty", action="store_true")

    p_prof = sub.add_parser("profile", help="performance profiles from a records CSV")
    p_prof.add_argument("--in", dest="infile", required=True, help="records CSV path")
    p_prof.add_argument("--metric", choices=["time", "fstar"], default="time")
    p_prof.add_argument("--out", default="profile",
                        help="output prefix; writes <out>.csv and <out>.svg")
    p_prof.add_argument("--pretty", action="store_true")

    p_check = sub.add_parser("check", help="print theory constants")
    p_check.add_argument("--mu", type=float, help="strong convexity constant")
    p_check.add_argument("--L", type=float, help="gradient Lipschitz constant")
    p_check.add_argument("--c", type=float, help="direction norm bound ||d||,||s|| <= c||g||")
    p_check.add_argument("--c1", type=float, help="gradient-related slope constant")
    p_check.add_argument("--sigma", type=float, default=1e-7)
    p_check.add_argument("--delta0", type=float, default=1.0)
    p_check.add_argument("--delta", type=float, default=0.5)
    p_check.add_argument("--eps", type=float, default=1e-3)
    p_check.add_argument("--f0", type=float, help="starting objective value")
    p_check.add_argument("--flow", type=float, help="objective lower bound")
    p_check.add_argument("--pretty", action="store_true")

    p_fig = sub.add_parser("figure-sc", help="strongly convex comparison run")
    _add_run_params(p_fig)
    p_fig.add_argument("--out", default="figure_sc.csv",
                       help="CSV of per-iteration distance to the optimum, per solver")
    p_fig.add_argument("--pretty", action="store_true")

    return parser


def _run_config(args, memory: int | None = None) -> RunConfig:
    return RunConfig(
        params=DirectionParams(alpha=args.alpha, beta=args.beta, g_f=args.gf),
        search=SearchConfig(
            delta0=args.delta0,
            sigma=args.sigma,
            delta=args.delta,
            memory=args.memory if memory is None else memory,
        ),
        eps=args.eps,
        max_iters=args.max_iters,
        time_limit=args.time_limit,
    )


def _summary_line(problem_key: str, solver: str, report) -> str:
    return (
        f"problem={problem_key} solver={solver} status={report.status.value} "
        f"iters={report.iters} f_evals={report.f_evals} g_evals={report.g_evals} "
        f"f_final={report.f_final!r} grad_inf={report.grad_inf_final!r} "
        f"time_s={report.wall_time:.6f}"
    )


def _pretty_summary(problem_key: str, solver: str, report) -> str:
    lines = [
        f"problem      {problem_key}",
        f"solver       {solver}",
        f"status       {report.status.value}",
        f"iterations   {report.iters}",
        f"f/g evals    {report.f_evals}/{report.g_evals}",
        f"f final      {report.f_final:.12g}",
        f"||g||_inf    {report.grad_inf_final:.6g}",
        f"wall time    {report.wall_time:.4f} s",
    ]
    return "\n".join(lines)


def _write_trace_csv(report, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["iter", "f", "grad_inf", "grad_norm", "step", "boundary", "trials", "dist_to_min"]
        )
        tr = report.trace
        for k in range(len(tr.f)):
            step = tr.steps[k] if k < len(tr.steps) else None
            bnd = tr.boundary[k] if k < len(tr.boundary) else None
            trials = tr.trials[k] if k < len(tr.trials) else None
            writer.writerow(
                [
                    k,
                    repr(tr.f[k]),
                    repr(tr.grad_inf[k]),
                    repr(tr.grad_norm[k]),
                    "" if step is None else repr(step),
                    "" if bnd is None else bnd.value,
                    "" if trials is None else trials,
                    "" if np.isnan(tr.dist_to_min[k]) else repr(tr.dist_to_min[k]),
                ]
            )


def _cmd_run(args) -> int:
    problem = from_key(args.problem)
    kind = SolverKind.from_tag(args.solver)
    if args.alpha_star:
        if problem.strong_mu is None or problem.lipschitz_L is None:
            raise ConfigError(
                f"--alpha-star needs mu and L metadata; problem {problem.name} lacks them"
            )
        opt = optimal_hb_params(StrongConvexSpec(problem.strong_mu, problem.lipschitz_L))
        args.alpha, args.beta = opt.alpha, opt.beta
    cfg = _run_config(args)
    report = solve(problem, kind, cfg)
    if args.trace:
        _write_trace_csv(report, args.trace)
    print(_pretty_summary(args.problem, kind.value, report) if args.pretty
          else _summary_line(args.problem, kind.value, report))
    return 0 if report.status is Status.CONVERGED else 1


def _cmd_bench(args) -> int:
    problems = args.problem if args.problem else list(DEFAULT_SUITE_KEYS)
    solvers = args.solver if args.solver else list(_ALL_SOLVERS)
    if args.jobs < 1:
        raise ConfigError(f"--jobs must be >= 1, got {args.jobs}")
    cfg = _run_config(args)
    records = run_grid(problems, solvers, cfg, parallelism=args.jobs)
    write_records(records, args.out)
    converged = sum(1 for r in records if r.status == Status.CONVERGED.value)
    print(f"wrote {len(records)} records to {args.out} ({converged} converged)")
    if args.pretty:
        for r in records:
            print(f"  {r.problem:<16} {r.solver:<8} {r.status:<18} iters={r.iters}")
    return 0


def _cmd_profile(args) -> int:
    if not os.path.exists(args.infile):
        raise UsageError(f"records file not found: {args.infile}")
    records = read_records(args.infile)
    curves = performance_profile(records, metric=args.metric)
    csv_path = f"{args.out}.csv"
    svg_path = f"{args.out}.svg"
    write_profiles(curves, csv_path)
    write_profile_svg(curves, svg_path, metric=args.metric)
    print(f"wrote {csv_path} and {svg_path}")
    if args.pretty:
        for c in curves:
            print(f"  {c.solver:<8} rho(1)={c.rho(1.0):.3f} rho(inf)={c.points[-1][1]:.3f}")
    return 0


def _cmd_check(args) -> int:
    printed = False
    out = []
    if args.mu is not None and args.L is not None:
        opt = optimal_hb_params(StrongConvexSpec(args.mu, args.L))
        out.append(f"alpha_star={opt.alpha!r} beta_star={opt.beta!r} q_star={opt.q!r}")
        printed = True
    if args.c1 is not None and args.c is not None and args.L is not None:
        dlow = delta_low(args.c1, args.c, args.L, args.sigma)
        out.append(f"delta_low={dlow!r}")
        printed = True
        if args.f0 is not None and args.flow is not None:
            bound = iteration_bound(
                ComplexityInputs(
                    f0=args.f0,
                    f_low=args.flow,
                    sigma=args.sigma,
                    c1=args.c1,
                    c=args.c,
                    delta0=args.delta0,
                    delta=args.delta,
                    eps=args.eps,
                    L=args.L,
                )
            )
            out.append(f"iteration_bound={bound}")
    if not printed:
        raise UsageError(
            "check needs at least --mu with --L (optimal weights) "
            "or --c1 with --c and --L (step floor and iteration bound)"
        )
    if args.pretty:
        for line in out:
            for tok in line.split():
                name, _, value = tok.partition("=")
                print(f"{name:<16} {value}")
    else:
        print("\n".join(out))
    return 0


def _cmd_figure_sc(args) -> int:
    problem = from_key("logistic:2")
    opt = optimal_hb_params(StrongConvexSpec(problem.strong_mu, problem.lipschitz_L))
    args.alpha, args.beta = opt.alpha, opt.beta
    x_star = problem.known_min[0]
    x0 = np.ones(2)  # starting point of the comparison; recorded in the output header

    rows = []
    failures = 0
    for tag in _FIGURE_SOLVERS:
        memory = args.memory if tag == "CS_NMT" else 0
        cfg = _run_config(args, memory=memory)
        report = solve(problem, tag, cfg, x0=x0, keep_points=True)
        if report.status is not Status.CONVERGED:
            failures += 1
        for k, xk in enumerate(report.trace.points):
            rows.append((tag, k, float(np.linalg.norm(xk - x_star))))
        print(_summary_line(problem.name, tag, report))

    with open(args.out, "w", newline="") as fh:
        fh.write(f"# x0 = ({float(x0[0])!r}, {float(x0[1])!r})\n")
        writer = csv.writer(fh)
        writer.writerow(["solver", "iter", "dist"])
        for tag, k, dist in rows:
            writer.writerow([tag, k, repr(dist)])
    print(f"wrote distance traces to {args.out}")
    return 1 if failures else 0


_COMMANDS = {
    "run": _cmd_run,
    "bench": _cmd_bench,
    "profile": _cmd_profile,
    "check": _cmd_check,
    "figure-sc": _cmd_figure_sc,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except CurveOptError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
