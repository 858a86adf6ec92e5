"""Batch harness: (problem x solver) grids, CSV persistence, performance profiles.

One :class:`BenchmarkRecord` per (problem, solver, config) is the unit of
persistence.  Profiles follow the Dolan-More construction: per problem,
each solver's cost is divided by the best cost among solvers that did not
fail; failed runs get an infinite ratio.  For the final-value metric the
cost is shifted, m = f_star - best_f_star + 1e-12, so ratios stay
well-defined for zero or negative objectives.
"""

from __future__ import annotations

import csv
import hashlib
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import List, Sequence, Tuple

from .errors import ConfigError, IoError, ParseError, UsageError
from .problems import from_key
from .solvers import RunConfig, SolverKind, Status, solve

__all__ = [
    "BenchmarkRecord",
    "ProfileCurve",
    "config_hash",
    "run_grid",
    "performance_profile",
    "write_records",
    "read_records",
    "write_profiles",
    "write_profile_svg",
]

CSV_HEADER = (
    "problem,dim,solver,status,iters,f_evals,g_evals,f_star,grad_inf,time_s,config_hash"
)

FSTAR_SHIFT = 1e-12


@dataclass(frozen=True)
class BenchmarkRecord:
    problem: str
    dim: int
    solver: str
    status: str
    iters: int
    f_evals: int
    g_evals: int
    f_star: float
    grad_inf: float
    time_s: float
    config_hash: str


@dataclass(frozen=True)
class ProfileCurve:
    """Breakpoints (tau, rho) of one solver's step function; the final point
    uses tau = inf and carries the fraction of non-failed runs."""

    solver: str
    points: Tuple[Tuple[float, float], ...]

    def rho(self, tau: float) -> float:
        """Fraction of problems solved within ratio tau."""
        best = 0.0
        for t, r in self.points:
            if t <= tau:
                best = r
            else:
                break
        return best


def config_hash(cfg: RunConfig) -> str:
    """Stable short fingerprint of a run configuration."""
    canon = (
        f"alpha={cfg.params.alpha!r};beta={cfg.params.beta!r};g_f={cfg.params.g_f!r};"
        f"delta0={cfg.search.delta0!r};sigma={cfg.search.sigma!r};delta={cfg.search.delta!r};"
        f"memory={cfg.search.memory};max_backtracks={cfg.search.max_backtracks};"
        f"eps={cfg.eps!r};max_iters={cfg.max_iters};time_limit={cfg.time_limit!r}"
    )
    return hashlib.sha256(canon.encode()).hexdigest()[:12]


def run_grid(
    problem_keys: Sequence[str],
    solver_tags: Sequence[str],
    cfg: RunConfig = RunConfig(),
    parallelism: int = 1,
) -> List[BenchmarkRecord]:
    """Run every (problem, solver) pair and collect one record per pair.

    Keys and tags are resolved before any run starts, so a bad key fails
    fast.  Failed runs are recorded, never raised.  Output is ordered
    problem-major, solver-minor regardless of execution order.
    """
    if not problem_keys:
        raise ConfigError("empty problem list")
    if not solver_tags:
        raise ConfigError("empty solver list")
    if parallelism < 1:
        raise ConfigError(f"parallelism must be >= 1, got {parallelism}")

    problems = [from_key(k) for k in problem_keys]
    kinds = [SolverKind.from_tag(t) for t in solver_tags]
    chash = config_hash(cfg)

    def one(task):
        problem, kind = task
        t0 = time.perf_counter()
        report = solve(problem, kind, cfg)
        elapsed = time.perf_counter() - t0
        return BenchmarkRecord(
            problem=problem.name,
            dim=problem.dim,
            solver=kind.value,
            status=report.status.value,
            iters=report.iters,
            f_evals=report.f_evals,
            g_evals=report.g_evals,
            f_star=report.f_final,
            grad_inf=report.grad_inf_final,
            time_s=round(elapsed, 6),
            config_hash=chash,
        )

    tasks = [(p, kind) for p in problems for kind in kinds]
    if parallelism == 1:
        return [one(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(one, tasks))


def performance_profile(
    records: Sequence[BenchmarkRecord], metric: str = "time"
) -> List[ProfileCurve]:
    """Dolan-More profiles over the given records for metric 'time' or 'fstar'."""
    if metric not in ("time", "fstar"):
        raise UsageError(f"metric must be 'time' or 'fstar', got {metric!r}")

    solvers: List[str] = []
    problems: List[str] = []
    for r in records:
        if r.solver not in solvers:
            solvers.append(r.solver)
        if r.problem not in problems:
            problems.append(r.problem)
    if len(solvers) < 2:
        raise UsageError("profiles need at least 2 solvers")
    if not problems:
        raise UsageError("profiles need at least 1 problem")

    by_key = {(r.problem, r.solver): r for r in records}
    ratios = {s: [] for s in solvers}
    for p in problems:
        costs = {}
        for s in solvers:
            r = by_key.get((p, s))
            if r is None or r.status != Status.CONVERGED.value:
                continue
            if metric == "time":
                if r.time_s <= 0.0:
                    raise UsageError(f"non-positive time for successful run ({p}, {s})")
                costs[s] = r.time_s
            else:
                costs[s] = r.f_star
        if metric == "fstar" and costs:
            best = min(costs.values())
            costs = {s: v - best + FSTAR_SHIFT for s, v in costs.items()}
        best_cost = min(costs.values()) if costs else None
        for s in solvers:
            if s in costs:
                ratios[s].append(costs[s] / best_cost)
            else:
                ratios[s].append(math.inf)

    n = len(problems)
    curves = []
    for s in solvers:
        finite = sorted(r for r in ratios[s] if math.isfinite(r))
        pts = [(1.0, sum(1 for r in finite if r <= 1.0) / n)]
        rho = pts[0][1]
        seen = 0
        for r in finite:
            seen += 1
            if r <= 1.0:
                continue
            rho = seen / n
            if pts and pts[-1][0] == r:
                pts[-1] = (r, rho)
            else:
                pts.append((r, rho))
        pts.append((math.inf, len(finite) / n))
        curves.append(ProfileCurve(solver=s, points=tuple(pts)))
    return curves


# ---------------------------------------------------------------------------
# persistence

_INT_FIELDS = {"dim", "iters", "f_evals", "g_evals"}
_FLOAT_FIELDS = {"f_star", "grad_inf", "time_s"}
_STATUS_VOCAB = {s.value for s in Status}


def write_records(records: Sequence[BenchmarkRecord], path) -> None:
    """Write records as CSV; reals use the shortest round-trip decimal."""
    names = [f.name for f in fields(BenchmarkRecord)]
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(names)
            for r in records:
                row = []
                for name in names:
                    v = getattr(r, name)
                    row.append(repr(v) if isinstance(v, float) else str(v))
                writer.writerow(row)
    except OSError as exc:
        raise IoError(f"cannot write records to {path}: {exc}") from exc


def read_records(path) -> List[BenchmarkRecord]:
    names = [f.name for f in fields(BenchmarkRecord)]
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except OSError as exc:
        raise IoError(f"cannot read records from {path}: {exc}") from exc

    if not rows or rows[0] != names:
        raise ParseError(f"{path}: bad or missing header", line_no=1)
    records = []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(names):
            raise ParseError(
                f"{path}:{line_no}: expected {len(names)} fields, got {len(row)}",
                line_no=line_no,
            )
        kwargs = {}
        try:
            for name, cell in zip(names, row):
                if name in _INT_FIELDS:
                    kwargs[name] = int(cell)
                elif name in _FLOAT_FIELDS:
                    kwargs[name] = float(cell)
                else:
                    kwargs[name] = cell
        except ValueError:
            raise ParseError(
                f"{path}:{line_no}: bad numeric field", line_no=line_no
            ) from None
        if kwargs["status"] not in _STATUS_VOCAB:
            raise ParseError(
                f"{path}:{line_no}: unknown status {kwargs['status']!r}", line_no=line_no
            )
        records.append(BenchmarkRecord(**kwargs))
    return records


def write_profiles(curves: Sequence[ProfileCurve], path) -> None:
    """Write profile breakpoints as CSV with columns solver,tau,rho."""
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["solver", "tau", "rho"])
            for c in curves:
                for tau, rho in c.points:
                    writer.writerow([c.solver, repr(tau), repr(rho)])
    except OSError as exc:
        raise IoError(f"cannot write profiles to {path}: {exc}") from exc


def write_profile_svg(curves: Sequence[ProfileCurve], path, metric: str = "time") -> None:
    """Render profiles as a standalone SVG step plot with a log tau axis."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    tau_max = 1.0
    for c in curves:
        finite = [t for t, _ in c.points if math.isfinite(t)]
        if finite:
            tau_max = max(tau_max, max(finite))
    for c in curves:
        taus = [t for t, _ in c.points if math.isfinite(t)]
        rhos = [r for t, r in c.points if math.isfinite(t)]
        taus.append(tau_max * 1.05 if tau_max > 1.0 else 2.0)
        rhos.append(rhos[-1] if rhos else 0.0)
        ax.step(taus, rhos, where="post", label=c.solver)
    ax.set_xscale("log")
    ax.set_xlabel(r"$\tau$")
    ax.set_ylabel(r"$\rho(\tau)$")
    ax.set_ylim(-0.02, 1.02)
    ax.set_title(f"Performance profile ({metric})")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="lower right")
    try:
        fig.savefig(path, format="svg", bbox_inches="tight")
    except OSError as exc:
        raise IoError(f"cannot write SVG to {path}: {exc}") from exc
    finally:
        plt.close(fig)
