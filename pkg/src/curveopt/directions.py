"""Search directions: scaled gradient, heavy-ball, and descent safeguards."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

__all__ = [
    "MomentumState",
    "DirectionParams",
    "gradient_direction",
    "heavy_ball_direction",
    "is_descent",
    "safeguard_beta",
]


@dataclass
class MomentumState:
    """The pair (x^{k-1}, x^k) feeding the momentum term.

    Owned by a single solver run.  At k = 0 both entries are the starting
    point, so the momentum term is exactly zero.
    """

    x_prev: np.ndarray
    x_curr: np.ndarray

    @classmethod
    def initial(cls, x0: np.ndarray) -> "MomentumState":
        return cls(x_prev=x0, x_curr=x0)

    @property
    def momentum(self) -> np.ndarray:
        return self.x_curr - self.x_prev

    def advance(self, x_new: np.ndarray) -> None:
        self.x_prev = self.x_curr
        self.x_curr = x_new

    def reset(self) -> None:
        """Forget the previous point (restart: momentum term becomes zero)."""
        self.x_prev = self.x_curr


@dataclass(frozen=True)
class DirectionParams:
    """Step-rule parameters: heavy-ball weights alpha, beta and the
    initial-velocity scale g_f of the curve."""

    alpha: float = 1.0
    beta: float = 0.9
    g_f: float = 0.125

    def __post_init__(self):
        if self.alpha <= 0.0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        if self.beta < 0.0:
            raise ConfigError(f"beta must be nonnegative, got {self.beta}")
        if self.g_f <= 0.0:
            raise ConfigError(f"g_f must be positive, got {self.g_f}")


def gradient_direction(g: np.ndarray, g_f: float) -> np.ndarray:
    """Scaled steepest descent -g_f * g; gradient-related with c1 = c2 = g_f."""
    return -g_f * g


def heavy_ball_direction(g: np.ndarray, mom: MomentumState, p: DirectionParams) -> np.ndarray:
    """-alpha * g + beta * (x^k - x^{k-1})."""
    return -p.alpha * g + p.beta * (mom.x_curr - mom.x_prev)


def is_descent(g: np.ndarray, s: np.ndarray) -> bool:
    """True iff s is a strict descent direction: g.s < 0."""
    return float(np.dot(g, s)) < 0.0


def safeguard_beta(
    g: np.ndarray,
    mom: MomentumState,
    p: DirectionParams,
    max_halvings: int = 50,
) -> tuple[np.ndarray, float]:
    """Halve beta until the heavy-ball direction becomes a descent direction.

    Falls back to beta = 0 (pure -alpha*g, strict descent for g != 0) once
    max_halvings is exhausted.  Returns the direction and the beta used.
    """
    momentum = mom.x_curr - mom.x_prev
    beta = p.beta
    for _ in range(max_halvings + 1):
        s = -p.alpha * g + beta * momentum
        if float(np.dot(g, s)) < 0.0:
            return s, beta
        beta *= 0.5
    return -p.alpha * g, 0.0
