"""Region descriptors: intervals, arcs, boxes, discs, convex polygons and point lists.

A region knows how to test membership, project onto itself (nearest point) and
produce an epsilon-net of itself.  Regions are plain frozen dataclasses so they
serialize to ``{"kind": ..., **params}`` dictionaries.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .spaces import TWO_PI, wrap_angle


class EmptyRegionError(ValueError):
    pass


def _lattice(lo: float, hi: float, eps: float) -> np.ndarray:
    n = int(math.ceil((hi - lo) / eps - 1e-12)) + 1
    return np.linspace(lo, hi, max(n, 2)) if hi > lo else np.array([lo])


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise EmptyRegionError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def bounded(self):
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, P, tol=1e-12):
        x = np.asarray(P, dtype=float)[:, 0]
        return (x >= self.lo - tol) & (x <= self.hi + tol)

    def project(self, P):
        return np.clip(np.asarray(P, dtype=float), self.lo, self.hi)

    def net(self, eps):
        if not self.bounded:
            raise EmptyRegionError("cannot net an unbounded interval")
        return _lattice(self.lo, self.hi, eps).reshape(-1, 1)

    def samples(self, n, window=1e3):
        lo, hi = max(self.lo, -window), min(self.hi, window)
        if lo > hi:
            lo = hi = self.lo if math.isfinite(self.lo) else self.hi
        return np.linspace(lo, hi, n).reshape(-1, 1)


@dataclass(frozen=True)
class Arc:
    """Closed arc of the circle from ``alpha`` counterclockwise to ``beta``; alpha == beta is the full circle."""

    alpha: float
    beta: float

    @property
    def length(self):
        d = float(wrap_angle(self.beta - self.alpha))
        return TWO_PI if d == 0.0 else d

    def offset(self, P):
        return wrap_angle(np.asarray(P, dtype=float)[:, 0] - self.alpha)

    def contains(self, P, tol=1e-12):
        u = self.offset(P)
        return (u <= self.length + tol) | (u >= TWO_PI - tol)

    def project(self, P):
        P = np.asarray(P, dtype=float)
        if self.length >= TWO_PI:
            return P.copy()
        u = self.offset(P)
        outside = u > self.length
        to_beta = (u - self.length) < (TWO_PI - u)
        end = np.where(to_beta, self.beta, self.alpha)
        return np.where(outside, end, P[:, 0]).reshape(-1, 1) % TWO_PI

    def net(self, eps):
        L = self.length
        if L >= TWO_PI:
            n = int(math.ceil(TWO_PI / eps))
            t = self.alpha + np.arange(n) * (TWO_PI / n)
        else:
            t = self.alpha + _lattice(0.0, L, eps)
        return wrap_angle(t).reshape(-1, 1)

    def samples(self, n, window=None):
        return wrap_angle(self.alpha + np.linspace(0.0, self.length, n)).reshape(-1, 1)


@dataclass(frozen=True)
class Box:
    xlo: float
    xhi: float
    ylo: float
    yhi: float

    def contains(self, P, tol=1e-12):
        P = np.asarray(P, dtype=float)
        return ((P[:, 0] >= self.xlo - tol) & (P[:, 0] <= self.xhi + tol)
                & (P[:, 1] >= self.ylo - tol) & (P[:, 1] <= self.yhi + tol))

    def project(self, P):
        P = np.asarray(P, dtype=float)
        return np.column_stack([np.clip(P[:, 0], self.xlo, self.xhi), np.clip(P[:, 1], self.ylo, self.yhi)])

    def net(self, eps):
        # square lattice of spacing eps*sqrt(2) has covering radius eps
        step = eps * math.sqrt(2.0)
        xs = _lattice(self.xlo, self.xhi, step)
        ys = _lattice(self.ylo, self.yhi, step)
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        return np.column_stack([X.ravel(), Y.ravel()])

    def samples(self, n, window=None):
        k = max(int(math.sqrt(n)), 2)
        X, Y = np.meshgrid(np.linspace(self.xlo, self.xhi, k), np.linspace(self.ylo, self.yhi, k), indexing="ij")
        return np.column_stack([X.ravel(), Y.ravel()])


def _convex_net(region, bbox, eps):
    # grid points near the region, projected onto it; projection is 1-Lipschitz
    step = eps * math.sqrt(2.0)
    xlo, xhi, ylo, yhi = bbox
    xs = np.arange(xlo - step, xhi + 2 * step, step)
    ys = np.arange(ylo - step, yhi + 2 * step, step)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    G = np.column_stack([X.ravel(), Y.ravel()])
    Pg = region.project(G)
    near = np.hypot(*(G - Pg).T) <= step
    return np.unique(np.round(Pg[near], 15), axis=0)


@dataclass(frozen=True)
class DiscRegion:
    cx: float = 0.0
    cy: float = 0.0
    radius: float = 1.0

    def contains(self, P, tol=1e-12):
        P = np.asarray(P, dtype=float)
        return np.hypot(P[:, 0] - self.cx, P[:, 1] - self.cy) <= self.radius + tol

    def project(self, P):
        P = np.asarray(P, dtype=float)
        v = P - (self.cx, self.cy)
        r = np.hypot(v[:, 0], v[:, 1])
        scale = np.where(r > self.radius, self.radius / np.where(r > 0, r, 1.0), 1.0)
        return v * scale[:, None] + (self.cx, self.cy)

    def net(self, eps):
        r = self.radius
        return _convex_net(self, (self.cx - r, self.cx + r, self.cy - r, self.cy + r), eps)

    def samples(self, n, window=None):
        return self.net(self.radius * 2.0 / math.sqrt(n))


@dataclass(frozen=True)
class Polygon:
    """Convex polygon, vertices listed counterclockwise."""

    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(tuple(float(c) for c in v) for v in self.vertices))
        if len(self.vertices) < 3:
            raise EmptyRegionError("polygon needs at least three vertices")

    def _halfplanes(self):
        V = np.array(self.vertices)
        E = np.roll(V, -1, axis=0) - V
        normals = np.column_stack([E[:, 1], -E[:, 0]])
        normals /= np.hypot(normals[:, 0], normals[:, 1])[:, None]
        offsets = np.einsum("ij,ij->i", normals, V)
        return normals, offsets

    def contains(self, P, tol=1e-12):
        n, c = self._halfplanes()
        return (np.asarray(P, dtype=float) @ n.T <= c + tol).all(axis=1)

    def project(self, P):
        P = np.asarray(P, dtype=float)
        V = np.array(self.vertices)
        best = P.copy()
        best_d = np.full(len(P), np.inf)
        for a, b in zip(V, np.roll(V, -1, axis=0)):
            ab = b - a
            t = np.clip(((P - a) @ ab) / (ab @ ab), 0.0, 1.0)
            Q = a + t[:, None] * ab
            d = np.hypot(*(P - Q).T)
            better = d < best_d
            best[better] = Q[better]
            best_d[better] = d[better]
        inside = self.contains(P, 0.0)
        best[inside] = P[inside]
        return best

    def net(self, eps):
        V = np.array(self.vertices)
        bbox = (V[:, 0].min(), V[:, 0].max(), V[:, 1].min(), V[:, 1].max())
        return _convex_net(self, bbox, eps)

    def samples(self, n, window=None):
        V = np.array(self.vertices)
        span = max(np.ptp(V[:, 0]), np.ptp(V[:, 1]))
        return self.net(span / math.sqrt(n))


@dataclass(frozen=True)
class PointList:
    points: tuple

    def __post_init__(self):
        pts = np.atleast_1d(np.array(self.points, dtype=float))
        if pts.size == 0:
            raise EmptyRegionError("empty point list")
        object.__setattr__(self, "points", tuple(map(tuple, pts.reshape(len(pts), -1))))

    def array(self):
        return np.array(self.points, dtype=float)

    def contains(self, P, tol=1e-12):
        Q = self.array()
        P = np.asarray(P, dtype=float)
        d = np.sqrt(((P[:, None, :] - Q[None, :, :]) ** 2).sum(-1))
        return d.min(axis=1) <= tol

    def project(self, P):
        Q = self.array()
        P = np.asarray(P, dtype=float)
        d = ((P[:, None, :] - Q[None, :, :]) ** 2).sum(-1)
        return Q[np.argmin(d, axis=1)]

    def net(self, eps):
        return self.array()

    def samples(self, n, window=None):
        return self.array()


_REGION_KINDS = {
    "interval": Interval, "arc": Arc, "box": Box, "disc": DiscRegion,
    "polygon": Polygon, "points": PointList,
}


def region_to_dict(region) -> dict:
    kind = {v: k for k, v in _REGION_KINDS.items()}[type(region)]
    d = asdict(region)
    for k, v in d.items():
        if isinstance(v, float) and math.isinf(v):
            d[k] = "inf" if v > 0 else "-inf"
    return {"kind": kind, **d}


def region_from_dict(d: dict):
    d = dict(d)
    cls = _REGION_KINDS[d.pop("kind")]
    d = {k: (float(v) if v in ("inf", "-inf") else v) for k, v in d.items()}
    return cls(**d)
