"""Closed-form calculators for the method's theory constants.

Covers the optimal heavy-ball parameters on strongly convex problems, the
smoothness constant of the objective along a quadratic curve, the step
floor of the backtracking search, and the worst-case iteration bound to
epsilon-stationarity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "StrongConvexSpec",
    "OptimalHBParams",
    "ComplexityInputs",
    "optimal_hb_params",
    "curve_smoothness_bound",
    "delta_low",
    "iteration_bound",
]


@dataclass(frozen=True)
class StrongConvexSpec:
    """Curvature interval 0 < mu <= L of a strongly convex problem."""

    mu: float
    L: float

    def __post_init__(self):
        if not 0.0 < self.mu <= self.L:
            raise DomainError(f"need 0 < mu <= L, got mu={self.mu}, L={self.L}")


@dataclass(frozen=True)
class OptimalHBParams:
    """Optimal heavy-ball weights and the resulting geometric rate q."""

    alpha: float
    beta: float
    q: float


def optimal_hb_params(spec: StrongConvexSpec) -> OptimalHBParams:
    """alpha* = 4/(sqrt(L)+sqrt(mu))^2, beta* = q*^2, q* = (sqrt(L)-sqrt(mu))/(sqrt(L)+sqrt(mu))."""
    rl, rm = math.sqrt(spec.L), math.sqrt(spec.mu)
    q = (rl - rm) / (rl + rm)
    return OptimalHBParams(alpha=4.0 / (rl + rm) ** 2, beta=q * q, q=q)


def curve_smoothness_bound(c: float, L: float, grad_norm: float) -> float:
    """Lipschitz constant of phi'(t) = grad f(gamma(t)) . gamma'(t) on [0, 1].

    Valid for curves with ||d|| <= c ||g|| and ||s|| <= c ||g|| on an
    L-smooth objective: L_k = (4c + 37 c^2 L) ||g||^2.
    """
    if c <= 0.0 or L <= 0.0:
        raise DomainError(f"need c > 0 and L > 0, got c={c}, L={L}")
    if grad_norm < 0.0:
        raise DomainError(f"grad_norm must be nonnegative, got {grad_norm}")
    return (4.0 * c + 37.0 * c * c * L) * grad_norm * grad_norm


def delta_low(c1: float, c: float, L: float, sigma: float) -> float:
    """Step threshold 2 c1 (1 - sigma) / (4c + 37 c^2 L) below which the
    sufficient-decrease test always passes."""
    if not 0.0 < sigma < 1.0:
        raise DomainError(f"sigma must be in (0, 1), got {sigma}")
    if c1 <= 0.0 or c <= 0.0 or L <= 0.0:
        raise DomainError(f"need c1, c, L > 0, got c1={c1}, c={c}, L={L}")
    return 2.0 * c1 * (1.0 - sigma) / (4.0 * c + 37.0 * c * c * L)


@dataclass(frozen=True)
class ComplexityInputs:
    """Inputs of the O(eps^-2) iteration bound."""

    f0: float
    f_low: float
    sigma: float
    c1: float
    c: float
    delta0: float
    delta: float
    eps: float
    L: float

    def __post_init__(self):
        if self.f0 < self.f_low:
            raise DomainError(f"f0 must be >= f_low, got f0={self.f0}, f_low={self.f_low}")
        if not 0.0 < self.sigma < 1.0:
            raise DomainError(f"sigma must be in (0, 1), got {self.sigma}")
        if not 0.0 < self.delta0 <= 1.0:
            raise DomainError(f"delta0 must be in (0, 1], got {self.delta0}")
        if not 0.0 < self.delta < 1.0:
            raise DomainError(f"delta must be in (0, 1), got {self.delta}")
        if self.eps <= 0.0:
            raise DomainError(f"eps must be positive, got {self.eps}")
        if self.c1 <= 0.0 or self.c <= 0.0 or self.L <= 0.0:
            raise DomainError("c1, c and L must be positive")


def iteration_bound(inp: ComplexityInputs) -> int:
    """Worst-case iterations to reach ||grad f|| <= eps (Euclidean norm):

        ceil( (f0 - f_low) / (sigma c1 min(delta0, delta * delta_low) eps^2) )
    """
    dlow = delta_low(inp.c1, inp.c, inp.L, inp.sigma)
    denom = inp.sigma * inp.c1 * min(inp.delta0, inp.delta * dlow) * inp.eps**2
    return math.ceil((inp.f0 - inp.f_low) / denom)
