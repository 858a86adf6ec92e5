"""The six iterative methods: CS, CS_NMT, GD, M_HB, M_RES, M_BETA.

All methods share the stopping rule ||grad||_inf <= eps, the iteration cap
and the wall-clock limit.  CS and CS_NMT search along the quadratic curve
built from the scaled gradient d = -g_f * grad and the heavy-ball shift s;
GD, M_RES and M_BETA run the same Armijo machinery along straight lines
(realized as the degenerate curve d = s = p); M_HB applies x + s with no
acceptance test.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Union

import numpy as np

from .curves import QuadraticCurve
from .directions import (
    DirectionParams,
    MomentumState,
    gradient_direction,
    heavy_ball_direction,
    is_descent,
    safeguard_beta,
)
from .errors import ConfigError, DimensionError, EvaluationFailure, SearchStalled, UsageError
from .problems import CountingProblem, Problem
from .search import Boundary, FHistory, SearchConfig, armijo_curve_search, nonmonotone_reference

__all__ = [
    "SolverKind",
    "Status",
    "RunConfig",
    "Trace",
    "SolverReport",
    "solve",
    "trajectory_distance",
]


class SolverKind(Enum):
    CS = "CS"
    CS_NMT = "CS_NMT"
    GD = "GD"
    M_HB = "M_HB"
    M_RES = "M_RES"
    M_BETA = "M_BETA"

    @classmethod
    def from_tag(cls, tag: Union[str, "SolverKind"]) -> "SolverKind":
        if isinstance(tag, cls):
            return tag
        try:
            return cls(tag)
        except ValueError:
            raise ConfigError(
                f"unknown solver {tag!r}; known: {', '.join(k.value for k in cls)}"
            ) from None


class Status(Enum):
    CONVERGED = "Converged"
    MAX_ITERS = "MaxIters"
    TIME_LIMIT = "TimeLimit"
    LINE_SEARCH_FAILURE = "LineSearchFailure"
    EVALUATION_FAILURE = "EvaluationFailure"


@dataclass(frozen=True)
class RunConfig:
    """Everything a run needs besides the problem and the starting point."""

    params: DirectionParams = DirectionParams()
    search: SearchConfig = SearchConfig(memory=20)
    eps: float = 1e-3
    max_iters: int = 5000
    time_limit: float = 120.0

    def __post_init__(self):
        if self.eps <= 0.0:
            raise ConfigError(f"eps must be positive, got {self.eps}")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.time_limit <= 0.0:
            raise ConfigError(f"time_limit must be positive, got {self.time_limit}")


@dataclass
class Trace:
    """Per-iteration log.

    Scalar lists are always recorded: f, gradient norms and distance to the
    known minimizer (NaN when unknown) have one entry per visited iterate;
    steps/boundary/trials have one entry per accepted step (None step and
    boundary for M_HB).  Iterates themselves are kept only when the run was
    started with keep_points=True.
    """

    f: List[float] = field(default_factory=list)
    grad_inf: List[float] = field(default_factory=list)
    grad_norm: List[float] = field(default_factory=list)
    dist_to_min: List[float] = field(default_factory=list)
    steps: List[Optional[float]] = field(default_factory=list)
    boundary: List[Optional[Boundary]] = field(default_factory=list)
    trials: List[int] = field(default_factory=list)
    points: Optional[List[np.ndarray]] = None


@dataclass(frozen=True)
class SolverReport:
    status: Status
    iters: int
    f_evals: int
    g_evals: int
    f_final: float
    grad_inf_final: float
    x_final: np.ndarray
    wall_time: float
    trace: Trace


def _step(kind, counting, x, f_curr, g, mom, hist, cfg):
    """One update from x; returns (x_new, f_new, outcome-or-None)."""
    params, search_cfg = cfg.params, cfg.search

    if kind is SolverKind.M_HB:
        x_new = x + heavy_ball_direction(g, mom, params)
        return x_new, counting.value(x_new), None

    if kind in (SolverKind.CS, SolverKind.CS_NMT):
        d = gradient_direction(g, params.g_f)
        s = heavy_ball_direction(g, mom, params)
        curve = QuadraticCurve(x, d, s)
        slope0 = float(g @ d)
        reference = nonmonotone_reference(hist) if kind is SolverKind.CS_NMT else f_curr
    else:
        if kind is SolverKind.GD:
            p = -g
        elif kind is SolverKind.M_RES:
            s = heavy_ball_direction(g, mom, params)
            if is_descent(g, s):
                p = s
            else:
                mom.reset()
                p = -g
        else:  # M_BETA
            p, _ = safeguard_beta(g, mom, params)
        curve = QuadraticCurve(x, p, p)
        slope0 = float(g @ p)
        reference = f_curr

    out = armijo_curve_search(
        lambda t: counting.value(curve.point(t)), slope0, reference, search_cfg
    )
    return curve.point(out.t), out.f_at_t, out


def solve(
    problem: Problem,
    kind: Union[str, SolverKind],
    cfg: RunConfig = RunConfig(),
    x0=None,
    keep_points: bool = False,
) -> SolverReport:
    """Run one solver on one problem until convergence or failure.

    SearchStalled and EvaluationFailure terminate the run with the matching
    status; they are recorded in the report, never raised to the caller.
    """
    kind = SolverKind.from_tag(kind)
    x = np.array(problem.x0 if x0 is None else x0, dtype=float)
    if x.shape != (problem.dim,):
        raise DimensionError(
            f"starting point has shape {x.shape}, expected ({problem.dim},)"
        )

    counting = CountingProblem(problem)
    trace = Trace(points=[] if keep_points else None)
    x_min = problem.known_min[0] if problem.known_min is not None else None
    start = time.perf_counter()

    try:
        f = counting.value(x)
        g = counting.grad(x)
    except EvaluationFailure:
        return SolverReport(
            status=Status.EVALUATION_FAILURE,
            iters=0,
            f_evals=counting.f_evals,
            g_evals=counting.g_evals,
            f_final=float("nan"),
            grad_inf_final=float("nan"),
            x_final=x,
            wall_time=time.perf_counter() - start,
            trace=trace,
        )

    mom = MomentumState.initial(x)
    hist = FHistory(cfg.search.memory)
    hist.push(f)

    k = 0
    while True:
        ginf = float(np.max(np.abs(g)))
        trace.f.append(f)
        trace.grad_inf.append(ginf)
        trace.grad_norm.append(float(np.linalg.norm(g)))
        trace.dist_to_min.append(
            float(np.linalg.norm(x - x_min)) if x_min is not None else float("nan")
        )
        if trace.points is not None:
            trace.points.append(x.copy())

        if ginf <= cfg.eps:
            status = Status.CONVERGED
            break
        if k >= cfg.max_iters:
            status = Status.MAX_ITERS
            break
        if time.perf_counter() - start > cfg.time_limit:
            status = Status.TIME_LIMIT
            break

        try:
            x_new, f_new, out = _step(kind, counting, x, f, g, mom, hist, cfg)
            g_new = counting.grad(x_new)
        except SearchStalled:
            status = Status.LINE_SEARCH_FAILURE
            break
        except EvaluationFailure:
            status = Status.EVALUATION_FAILURE
            break

        trace.steps.append(out.t if out is not None else None)
        trace.boundary.append(out.boundary if out is not None else None)
        trace.trials.append(out.trials if out is not None else 0)

        mom.advance(x_new)
        hist.push(f_new)
        x, f, g = x_new, f_new, g_new
        k += 1

    return SolverReport(
        status=status,
        iters=k,
        f_evals=counting.f_evals,
        g_evals=counting.g_evals,
        f_final=f,
        grad_inf_final=ginf,
        x_final=x,
        wall_time=time.perf_counter() - start,
        trace=trace,
    )


def trajectory_distance(report_a: SolverReport, report_b: SolverReport) -> np.ndarray:
    """Per-iteration infinity-norm gaps between two recorded trajectories.

    Both runs must have been made with keep_points=True; the result covers
    the common iteration range.
    """
    pa = report_a.trace.points if report_a.trace is not None else None
    pb = report_b.trace.points if report_b.trace is not None else None
    if pa is None or pb is None:
        raise UsageError("trajectory_distance needs traces recorded with keep_points=True")
    n = min(len(pa), len(pb))
    return np.array([float(np.max(np.abs(pa[k] - pb[k]))) for k in range(n)])
