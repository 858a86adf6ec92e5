"""Differentiable test problems with analytic gradients.

A :class:`Problem` bundles an objective, its gradient, a canonical starting
point and optional curvature metadata (gradient Lipschitz constant, strong
convexity constant, known minimizer).  Problems are addressable by string
keys of the form ``family:dim[:param]``, e.g. ``logistic:2``,
``quad:100:k1e4``, ``rosen:1000``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit

from .errors import ConfigError, DimensionError, EvaluationFailure

__all__ = [
    "Problem",
    "CountingProblem",
    "fd_check",
    "logistic_ridge",
    "quadratic_diag",
    "rosenbrock",
    "extended_powell",
    "broyden_tridiagonal",
    "trigonometric",
    "from_key",
    "default_suite",
    "DEFAULT_SUITE_KEYS",
]


@dataclass(frozen=True)
class Problem:
    """A smooth unconstrained minimization problem.

    ``f`` and ``g`` are deterministic callables mapping a point in R^n to
    the objective value and gradient.  ``known_min``, when present, stores
    a point whose gradient infinity-norm is below 1e-8 together with the
    objective value there.
    """

    name: str
    dim: int
    f: Callable[[np.ndarray], float]
    g: Callable[[np.ndarray], np.ndarray]
    x0: np.ndarray
    lipschitz_L: Optional[float] = None
    strong_mu: Optional[float] = None
    known_min: Optional[Tuple[np.ndarray, float]] = None

    def _check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionError(
                f"{self.name}: expected a point of dimension {self.dim}, "
                f"got shape {x.shape}"
            )
        return x

    def value(self, x) -> float:
        x = self._check_point(x)
        with np.errstate(all="ignore"):
            v = float(self.f(x))
        if not np.isfinite(v):
            raise EvaluationFailure(f"{self.name}: non-finite objective value", point=x)
        return v

    def grad(self, x) -> np.ndarray:
        x = self._check_point(x)
        with np.errstate(all="ignore"):
            gv = np.asarray(self.g(x), dtype=float)
        if gv.shape != (self.dim,):
            raise DimensionError(f"{self.name}: gradient has shape {gv.shape}")
        if not np.all(np.isfinite(gv)):
            raise EvaluationFailure(f"{self.name}: non-finite gradient", point=x)
        return gv

    def evaluate(self, x) -> Tuple[float, np.ndarray]:
        """Objective value and gradient at ``x``."""
        return self.value(x), self.grad(x)


class CountingProblem:
    """Decorates a :class:`Problem` with value/gradient evaluation counters.

    One wrapper instance belongs to exactly one solver run; the wrapped
    problem itself stays immutable and shareable.
    """

    def __init__(self, problem: Problem):
        self.problem = problem
        self.f_evals = 0
        self.g_evals = 0

    def value(self, x) -> float:
        self.f_evals += 1
        return self.problem.value(x)

    def grad(self, x) -> np.ndarray:
        self.g_evals += 1
        return self.problem.grad(x)

    def evaluate(self, x) -> Tuple[float, np.ndarray]:
        return self.value(x), self.grad(x)


def fd_check(problem: Problem, x, h: float) -> float:
    """Central-difference check of the analytic gradient at ``x``.

    Returns ``max_i |slope_i - g_i| / (1 + |g_i|)`` where ``slope_i`` is
    the central difference ``(f(x + h e_i) - f(x - h e_i)) / (2 h)``.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    x = np.asarray(x, dtype=float)
    g = problem.grad(x)
    worst = 0.0
    for i in range(problem.dim):
        e = np.zeros(problem.dim)
        e[i] = h
        slope = (problem.value(x + e) - problem.value(x - e)) / (2.0 * h)
        rel = abs(slope - g[i]) / (1.0 + abs(g[i]))
        worst = max(worst, rel)
    return worst


# ---------------------------------------------------------------------------
# problem families


def logistic_ridge(c=(34.0, -1.0)) -> Problem:
    """Regularized logistic objective log(1 + exp(c.x)) + 0.5 ||x||^2.

    Strongly convex with mu = 1 and gradient Lipschitz constant
    0.25 ||c||^2 + 1.  The unique minimizer is recovered to high accuracy
    from the scalar fixed-point equation u + ||c||^2 sigmoid(u) = 0 with
    u = c.x and stored as ``known_min``.
    """
    c = np.asarray(c, dtype=float)
    n = c.size
    cc = float(c @ c)

    def f(x):
        return float(np.logaddexp(0.0, c @ x)) + 0.5 * float(x @ x)

    def g(x):
        return c * expit(float(c @ x)) + x

    u_star = brentq(lambda u: u + cc * expit(u), -cc - 1.0, 1.0, xtol=1e-14)
    x_star = -expit(u_star) * c
    f_star = float(np.logaddexp(0.0, c @ x_star)) + 0.5 * float(x_star @ x_star)

    return Problem(
        name=f"logistic:{n}",
        dim=n,
        f=f,
        g=g,
        x0=np.ones(n),
        lipschitz_L=0.25 * cc + 1.0,
        strong_mu=1.0,
        known_min=(x_star, f_star),
    )


def quadratic_diag(n: int, kappa: float = 1.0) -> Problem:
    """Diagonal quadratic 0.5 sum(lam_i x_i^2), eigenvalues geometric in [1, kappa]."""
    if n < 1 or kappa < 1.0:
        raise ConfigError("quadratic_diag requires n >= 1 and kappa >= 1")
    lam = np.geomspace(1.0, kappa, n)

    def f(x):
        return 0.5 * float(x @ (lam * x))

    def g(x):
        return lam * x

    return Problem(
        name=f"quad:{n}:k{kappa:g}",
        dim=n,
        f=f,
        g=g,
        x0=np.ones(n),
        lipschitz_L=float(lam.max()),
        strong_mu=float(lam.min()),
        known_min=(np.zeros(n), 0.0),
    )


def rosenbrock(n: int) -> Problem:
    """Chained Rosenbrock valley; global minimum 0 at the all-ones point."""
    if n < 2:
        raise ConfigError("rosenbrock requires n >= 2")

    def f(x):
        return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))

    def g(x):
        r = x[1:] - x[:-1] ** 2
        grad = np.zeros_like(x)
        grad[:-1] = -400.0 * x[:-1] * r - 2.0 * (1.0 - x[:-1])
        grad[1:] += 200.0 * r
        return grad

    x0 = np.ones(n)
    x0[::2] = -1.2
    return Problem(
        name=f"rosen:{n}",
        dim=n,
        f=f,
        g=g,
        x0=x0,
        known_min=(np.ones(n), 0.0),
    )


def extended_powell(n: int) -> Problem:
    """Extended Powell singular function; n divisible by 4, minimum 0 at the origin."""
    if n < 4 or n % 4 != 0:
        raise ConfigError("extended_powell requires n divisible by 4")

    def f(x):
        x1, x2, x3, x4 = x[0::4], x[1::4], x[2::4], x[3::4]
        return float(
            np.sum(
                (x1 + 10.0 * x2) ** 2
                + 5.0 * (x3 - x4) ** 2
                + (x2 - 2.0 * x3) ** 4
                + 10.0 * (x1 - x4) ** 4
            )
        )

    def g(x):
        x1, x2, x3, x4 = x[0::4], x[1::4], x[2::4], x[3::4]
        a = x1 + 10.0 * x2
        b = x3 - x4
        p3 = (x2 - 2.0 * x3) ** 3
        q3 = (x1 - x4) ** 3
        grad = np.empty_like(x)
        grad[0::4] = 2.0 * a + 40.0 * q3
        grad[1::4] = 20.0 * a + 4.0 * p3
        grad[2::4] = 10.0 * b - 8.0 * p3
        grad[3::4] = -10.0 * b - 40.0 * q3
        return grad

    return Problem(
        name=f"powell:{n}",
        dim=n,
        f=f,
        g=g,
        x0=np.tile([3.0, -1.0, 0.0, 1.0], n // 4),
        known_min=(np.zeros(n), 0.0),
    )


def broyden_tridiagonal(n: int) -> Problem:
    """Sum of squares of the Broyden tridiagonal residuals."""
    if n < 1:
        raise ConfigError("broyden_tridiagonal requires n >= 1")

    def residual(x):
        r = (3.0 - 2.0 * x) * x + 1.0
        r[1:] -= x[:-1]
        r[:-1] -= 2.0 * x[1:]
        return r

    def f(x):
        r = residual(x)
        return float(r @ r)

    def g(x):
        r = residual(x)
        grad = 2.0 * (3.0 - 4.0 * x) * r
        grad[:-1] -= 2.0 * r[1:]
        grad[1:] -= 4.0 * r[:-1]
        return grad

    return Problem(name=f"broyden:{n}", dim=n, f=f, g=g, x0=-np.ones(n))


def trigonometric(n: int) -> Problem:
    """Trigonometric sum-of-squares test function; minimum 0 at the origin.

    Residuals carry a 1/n scale so objective values stay O(1) across
    dimensions, which keeps finite-difference checks meaningful in double
    precision.
    """
    if n < 1:
        raise ConfigError("trigonometric requires n >= 1")
    idx = np.arange(1, n + 1, dtype=float)

    def residual(x):
        return (n - np.cos(x).sum() + idx * (1.0 - np.cos(x)) - np.sin(x)) / n

    def f(x):
        r = residual(x)
        return float(r @ r)

    def g(x):
        r = residual(x)
        return 2.0 * (np.sin(x) * r.sum() + r * (idx * np.sin(x) - np.cos(x))) / n

    return Problem(
        name=f"trig:{n}",
        dim=n,
        f=f,
        g=g,
        x0=np.full(n, 1.0 / n),
        known_min=(np.zeros(n), 0.0),
    )


# ---------------------------------------------------------------------------
# key-based addressing

_FAMILIES = {
    "logistic": logistic_ridge,
    "quad": quadratic_diag,
    "rosen": rosenbrock,
    "powell": extended_powell,
    "broyden": broyden_tridiagonal,
    "trig": trigonometric,
}

DEFAULT_SUITE_KEYS = (
    "logistic:2",
    "quad:2:k1",
    "quad:10:k100",
    "quad:100:k1e4",
    "quad:1000:k100",
    "rosen:2",
    "rosen:10",
    "rosen:100",
    "rosen:1000",
    "powell:4",
    "powell:12",
    "powell:100",
    "powell:1000",
    "broyden:2",
    "broyden:10",
    "broyden:100",
    "broyden:1000",
    "trig:2",
    "trig:10",
    "trig:100",
    "trig:1000",
)


def from_key(key: str) -> Problem:
    """Build a problem from a ``family:dim[:param]`` key."""
    parts = key.strip().split(":")
    if len(parts) < 2:
        raise ConfigError(f"malformed problem key {key!r}; expected family:dim[:param]")
    family = parts[0]
    if family not in _FAMILIES:
        raise ConfigError(
            f"unknown problem family {family!r}; known: {', '.join(sorted(_FAMILIES))}"
        )
    try:
        dim = int(parts[1])
    except ValueError:
        raise ConfigError(f"bad dimension in problem key {key!r}") from None

    if family == "quad":
        kappa = 1.0
        if len(parts) == 3:
            if not parts[2].startswith("k"):
                raise ConfigError(f"quad parameter must look like k<value>, got {parts[2]!r}")
            try:
                kappa = float(parts[2][1:])
            except ValueError:
                raise ConfigError(f"bad condition number in problem key {key!r}") from None
        elif len(parts) > 3:
            raise ConfigError(f"too many fields in problem key {key!r}")
        prob = quadratic_diag(dim, kappa)
    else:
        if len(parts) != 2:
            raise ConfigError(f"family {family!r} takes no parameter (key {key!r})")
        if family == "logistic":
            if dim != 2:
                raise ConfigError("logistic is defined for dim 2 (c = (34, -1))")
            prob = logistic_ridge()
        else:
            prob = _FAMILIES[family](dim)
    # keep the caller's spelling so records round-trip through their own keys
    return dataclasses.replace(prob, name=key.strip())


def default_suite() -> list[Problem]:
    """The desk-scale benchmark catalog."""
    return [from_key(k) for k in DEFAULT_SUITE_KEYS]
