"""Concrete metric charts used throughout the library.

Every space stores points as float arrays of shape ``(n, dim)``.  The two
angular spaces (``Circle`` and ``CompactifiedLine``) measure arc length on a
circle of circumference 2*pi; the compactified line reaches that circle
through ``theta = 2*arctan(x)`` so that ``inf`` sits at ``theta = pi``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

KINDS = ("RealLine", "CompactifiedLine", "Circle", "UnitDisc", "PlaneRegion")
_DIMS = {"RealLine": 1, "CompactifiedLine": 1, "Circle": 1, "UnitDisc": 2, "PlaneRegion": 2}


class SpaceMismatchError(ValueError):
    pass


def wrap_angle(theta):
    """Reduce angles to [0, 2*pi)."""
    out = np.mod(theta, TWO_PI)
    return np.where(out >= TWO_PI, 0.0, out)


def line_to_angle(x):
    """Chart of the compactified line: x -> 2*arctan(x), with +-inf -> pi."""
    x = np.asarray(x, dtype=float)
    return np.where(np.isinf(x), np.pi, 2.0 * np.arctan(x))


def _arc_metric(t1, t2):
    d = np.mod(np.abs(t1 - t2), TWO_PI)
    return np.minimum(d, TWO_PI - d)


@dataclass(frozen=True)
class Space:
    kind: str
    bounds: tuple | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown space kind {self.kind!r}")
        if self.bounds is not None:
            object.__setattr__(self, "bounds", tuple(float(b) for b in self.bounds))
            if len(self.bounds) != 2 * self.dim:
                raise ValueError("bounds must be (lo, hi) or (xlo, xhi, ylo, yhi)")

    @property
    def dim(self) -> int:
        return _DIMS[self.kind]

    @property
    def angular(self) -> bool:
        return self.kind in ("Circle", "CompactifiedLine")

    def chart_bounds(self):
        if self.bounds is not None:
            return self.bounds
        if self.kind == "Circle":
            return (0.0, TWO_PI)
        if self.kind == "UnitDisc":
            return (-1.0, 1.0, -1.0, 1.0)
        return None

    def normalize(self, points) -> np.ndarray:
        """Coerce to a ``(n, dim)`` float array in canonical chart form."""
        pts = np.array(points, dtype=float)
        if pts.ndim == 0:
            pts = pts.reshape(1, 1)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1) if self.dim == 1 else pts.reshape(-1, 2)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise ValueError(f"points of shape {pts.shape} do not fit a {self.dim}-D chart")
        if np.isnan(pts).any():
            raise ValueError("NaN coordinate")
        if self.kind == "Circle":
            pts = wrap_angle(pts)
        elif self.kind == "CompactifiedLine":
            pts = np.where(np.isinf(pts), np.inf, pts)
        elif np.isinf(pts).any():
            raise ValueError(f"infinite coordinate on {self.kind}")
        return pts

    def distance(self, p, q) -> np.ndarray:
        """Elementwise metric between broadcastable arrays of points (last axis = coords)."""
        p = np.asarray(p, dtype=float)
        q = np.asarray(q, dtype=float)
        if self.kind == "RealLine":
            return np.abs(p[..., 0] - q[..., 0])
        if self.kind == "Circle":
            return _arc_metric(p[..., 0], q[..., 0])
        if self.kind == "CompactifiedLine":
            return _arc_metric(line_to_angle(p[..., 0]), line_to_angle(q[..., 0]))
        return np.hypot(p[..., 0] - q[..., 0], p[..., 1] - q[..., 1])

    def pairwise(self, P, Q) -> np.ndarray:
        P = np.asarray(P, dtype=float)
        Q = np.asarray(Q, dtype=float)
        return self.distance(P[:, None, :], Q[None, :, :])

    def embed(self, P) -> np.ndarray:
        """Euclidean embedding in which the metric is a monotone function of chord length."""
        P = np.asarray(P, dtype=float)
        if self.kind == "Circle":
            t = P[:, 0]
        elif self.kind == "CompactifiedLine":
            t = line_to_angle(P[:, 0])
        else:
            return P
        return np.column_stack([np.cos(t), np.sin(t)])

    def embedding_radius(self, r: float) -> float:
        if self.angular:
            return 2.0 * np.sin(min(r, np.pi) / 2.0)
        return r

    def contains(self, P, tol: float = 1e-9) -> np.ndarray:
        P = np.asarray(P, dtype=float)
        ok = ~np.isnan(P).any(axis=1)
        if self.kind == "UnitDisc":
            ok &= np.hypot(P[:, 0], P[:, 1]) <= 1.0 + tol
        elif self.kind == "Circle":
            ok &= (P[:, 0] >= -tol) & (P[:, 0] < TWO_PI + tol)
        elif self.kind != "CompactifiedLine":
            ok &= np.isfinite(P).all(axis=1)
        if self.bounds is not None and self.kind in ("RealLine", "PlaneRegion"):
            b = self.bounds
            ok &= (P[:, 0] >= b[0] - tol) & (P[:, 0] <= b[1] + tol)
            if self.dim == 2:
                ok &= (P[:, 1] >= b[2] - tol) & (P[:, 1] <= b[3] + tol)
        return ok

    def sample(self, n: int, rng: np.random.Generator, window: float = 10.0) -> np.ndarray:
        """Random test points covering the chart (unbounded charts use ``[-window, window]``)."""
        if self.kind == "Circle":
            return rng.uniform(0.0, TWO_PI, size=(n, 1))
        if self.kind == "CompactifiedLine":
            t = rng.uniform(-np.pi, np.pi, size=n)
            x = np.tan(t / 2.0)
            x[0] = np.inf
            return x.reshape(-1, 1)
        if self.kind == "UnitDisc":
            r = np.sqrt(rng.uniform(0.0, 1.0, size=n))
            t = rng.uniform(0.0, TWO_PI, size=n)
            return np.column_stack([r * np.cos(t), r * np.sin(t)])
        b = self.bounds or (-window, window) * self.dim
        if self.dim == 1:
            return rng.uniform(b[0], b[1], size=(n, 1))
        return np.column_stack([rng.uniform(b[0], b[1], size=n), rng.uniform(b[2], b[3], size=n)])


REAL_LINE = Space("RealLine")
COMPACTIFIED_LINE = Space("CompactifiedLine")
CIRCLE = Space("Circle")
UNIT_DISC = Space("UnitDisc")
PLANE = Space("PlaneRegion")


def space_from_name(name: str, bounds=None) -> Space:
    aliases = {
        "real": "RealLine", "line": "RealLine", "compactified": "CompactifiedLine",
        "circle": "Circle", "disc": "UnitDisc", "plane": "PlaneRegion",
    }
    return Space(aliases.get(name, name), bounds)
