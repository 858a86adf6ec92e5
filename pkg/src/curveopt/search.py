"""Armijo-type backtracking along a curve, monotone and nonmonotone.

The search accepts the first t in the geometric schedule delta0, delta0*delta,
delta0*delta^2, ... with phi(t) <= reference + sigma * t * slope0.  Acceptance
is non-strict: a trial that hits the right-hand side exactly is accepted.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

from .errors import ConfigError, EvaluationFailure, NotDescent, SearchStalled, UsageError

__all__ = [
    "Boundary",
    "SearchConfig",
    "SearchOutcome",
    "FHistory",
    "armijo_curve_search",
    "nonmonotone_reference",
]


class Boundary(Enum):
    ACCEPTED_FIRST = "accepted_first"
    BACKTRACKED = "backtracked"


@dataclass(frozen=True)
class SearchConfig:
    """Backtracking parameters.

    memory M controls the nonmonotone window (0 means monotone); the window
    holds the most recent min(k, M) + 1 objective values.
    """

    delta0: float = 1.0
    sigma: float = 1e-7
    delta: float = 0.5
    memory: int = 0
    max_backtracks: int = 60

    def __post_init__(self):
        if not 0.0 < self.delta0 <= 1.0:
            raise ConfigError(f"delta0 must be in (0, 1], got {self.delta0}")
        if not 0.0 < self.sigma < 1.0:
            raise ConfigError(f"sigma must be in (0, 1), got {self.sigma}")
        if not 0.0 < self.delta < 1.0:
            raise ConfigError(f"delta must be in (0, 1), got {self.delta}")
        if self.memory < 0:
            raise ConfigError(f"memory must be nonnegative, got {self.memory}")
        if self.max_backtracks < 1:
            raise ConfigError(f"max_backtracks must be positive, got {self.max_backtracks}")


@dataclass(frozen=True)
class SearchOutcome:
    """Result of one backtracking search.

    ``last_rejected`` is the previously tried step (t / delta) when at least
    one backtrack happened, else None.  ``f_at_t`` is phi at the accepted
    step, so callers need not re-evaluate.
    """

    t: float
    trials: int
    boundary: Boundary
    last_rejected: Optional[float]
    f_at_t: float


class FHistory:
    """Ring buffer of the most recent objective values for the nonmonotone test."""

    def __init__(self, memory: int):
        if memory < 0:
            raise ConfigError(f"memory must be nonnegative, got {memory}")
        self.memory = memory
        self._window: deque[float] = deque(maxlen=memory + 1)

    def push(self, f_value: float) -> None:
        self._window.append(f_value)

    def __len__(self) -> int:
        return len(self._window)

    @property
    def window(self) -> tuple[float, ...]:
        return tuple(self._window)

    def reference(self) -> float:
        if not self._window:
            raise UsageError("objective history is empty")
        return max(self._window)


def nonmonotone_reference(hist: FHistory) -> float:
    """Max of the stored window; equals the latest value in the monotone case M=0."""
    return hist.reference()


def armijo_curve_search(
    phi: Callable[[float], float],
    slope0: float,
    reference_f: float,
    cfg: SearchConfig,
) -> SearchOutcome:
    """Backtrack t = delta0 * delta^j until phi(t) <= reference_f + sigma*t*slope0.

    slope0 must be negative (descent curve).  Raises SearchStalled, carrying
    the best trial seen, once max_backtracks backtracks were spent without
    acceptance.
    """
    if not slope0 < 0.0:
        raise NotDescent(f"initial slope must be negative, got {slope0}")

    t = cfg.delta0
    prev_t: Optional[float] = None
    best_t, best_f = None, math.inf
    for j in range(cfg.max_backtracks + 1):
        val = phi(t)
        if not math.isfinite(val):
            raise EvaluationFailure(f"non-finite curve value at t={t}")
        if val <= reference_f + cfg.sigma * t * slope0:
            boundary = Boundary.ACCEPTED_FIRST if j == 0 else Boundary.BACKTRACKED
            return SearchOutcome(
                t=t,
                trials=j + 1,
                boundary=boundary,
                last_rejected=prev_t,
                f_at_t=val,
            )
        if val < best_f:
            best_t, best_f = t, val
        prev_t = t
        t = cfg.delta * t
    raise SearchStalled(
        f"no acceptable step within {cfg.max_backtracks} backtracks",
        best_t=best_t,
        best_f=best_f,
    )
