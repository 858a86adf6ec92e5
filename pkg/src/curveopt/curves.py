"""Quadratic search curves gamma(t) = x + t d + t^2 (s - d) on t in [0, 1].

The curve starts at x with initial velocity d and ends at x + s.  In the
Bernstein basis it is the degree-2 Bezier curve with control points
P0 = x, P1 = x + d/2, P2 = x + s.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = ["QuadraticCurve", "BezierControls"]


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0.0) or np.any(t > 1.0):
        raise DomainError(f"curve parameter must lie in [0, 1], got {t}")
    return t


@dataclass(frozen=True)
class QuadraticCurve:
    """Immutable quadratic curve defined by origin x, velocity d and endpoint shift s."""

    x: np.ndarray
    d: np.ndarray
    s: np.ndarray

    def point(self, t):
        """Evaluate gamma(t); t may be a scalar or a 1-D array.

        The endpoints are returned exactly: point(0) is x and point(1) is
        computed as x + s, so a unit step is bitwise identical to the plain
        update x + s.
        """
        t = _check_t(t)
        if t.ndim == 0:
            tf = float(t)
            if tf == 0.0:
                return self.x.copy()
            if tf == 1.0:
                return self.x + self.s
            return self.x + tf * self.d + (tf * tf) * (self.s - self.d)
        tc = t[:, None]
        pts = self.x + tc * self.d + tc * tc * (self.s - self.d)
        pts[t == 0.0] = self.x
        pts[t == 1.0] = self.x + self.s
        return pts

    def velocity(self, t):
        """Evaluate gamma'(t) = d + 2 t (s - d); velocity(0) is exactly d."""
        t = _check_t(t)
        if t.ndim == 0:
            tf = float(t)
            if tf == 0.0:
                return self.d.copy()
            return self.d + (2.0 * tf) * (self.s - self.d)
        vel = self.d + (2.0 * t[:, None]) * (self.s - self.d)
        vel[t == 0.0] = self.d
        return vel

    def bezier_controls(self) -> "BezierControls":
        return BezierControls(
            p0=self.x.copy(),
            p1=self.x + 0.5 * self.d,
            p2=self.x + self.s,
        )


@dataclass(frozen=True)
class BezierControls:
    """Control points of the Bernstein-basis form of a quadratic curve."""

    p0: np.ndarray
    p1: np.ndarray
    p2: np.ndarray

    def point(self, t):
        """Evaluate the Bezier curve (1-t)^2 P0 + 2t(1-t) P1 + t^2 P2."""
        t = _check_t(t)
        if t.ndim == 0:
            tf = float(t)
            u = 1.0 - tf
            return u * u * self.p0 + 2.0 * tf * u * self.p1 + tf * tf * self.p2
        tc = t[:, None]
        u = 1.0 - tc
        return u * u * self.p0 + 2.0 * tc * u * self.p1 + tc * tc * self.p2
