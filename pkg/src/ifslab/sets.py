"""Finite point clouds standing in for nonempty compacta.

A ``CompactSetApprox`` is an epsilon-net of a compact set.  Hausdorff distance
between two of them is exact for the clouds as given; ``grid_snap`` keeps the
clouds small by greedily discarding points closer than ``eps/2`` to an
already-kept point (input order decides which point survives, so results are
bit-reproducible).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numba import njit, types
from numba.typed import Dict
from scipy.spatial import cKDTree

from .spaces import Space, SpaceMismatchError

BRUTE_FORCE_LIMIT = 10**6


class EmptySetError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class CompactSetApprox:
    space: Space
    points: np.ndarray
    resolution: float
    allow_empty: bool = field(default=False, repr=False)

    def __post_init__(self):
        pts = self.space.normalize(self.points) if len(np.atleast_1d(self.points)) else np.empty((0, self.space.dim))
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if not self.resolution > 0:
            raise ValueError("resolution must be positive")
        if len(pts) == 0 and not self.allow_empty:
            raise EmptySetError("compact set approximations must be nonempty")

    @classmethod
    def empty(cls, space: Space, resolution: float) -> "CompactSetApprox":
        return cls(space, np.empty((0, space.dim)), resolution, allow_empty=True)

    def __len__(self):
        return len(self.points)

    @property
    def is_empty(self) -> bool:
        return len(self.points) == 0

    def union(self, other: "CompactSetApprox") -> "CompactSetApprox":
        _check_same_space(self, other)
        return CompactSetApprox(self.space, np.vstack([self.points, other.points]),
                                min(self.resolution, other.resolution), allow_empty=True)

    def __repr__(self):
        return f"CompactSetApprox({self.space.kind}, n={len(self)}, eps={self.resolution:g})"


def as_set(space: Space, points, resolution: float = 1e-9) -> CompactSetApprox:
    return CompactSetApprox(space, points, resolution)


def _check_same_space(A, B):
    if A.space != B.space:
        raise SpaceMismatchError(f"{A.space.kind} vs {B.space.kind}")


def _require_nonempty(*sets):
    for S in sets:
        if S.is_empty:
            raise EmptySetError("operation needs a nonempty set")


def nearest_distances(space: Space, P, Q, method: str = "auto") -> np.ndarray:
    """Distance from every point of ``P`` to the cloud ``Q``."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if method == "auto":
        method = "brute" if len(P) * len(Q) <= BRUTE_FORCE_LIMIT else "tree"
    if method == "brute":
        out = np.empty(len(P))
        chunk = max(1, BRUTE_FORCE_LIMIT // max(len(Q), 1))
        for i in range(0, len(P), chunk):
            out[i:i + chunk] = space.pairwise(P[i:i + chunk], Q).min(axis=1)
        return out
    # the metric is monotone in embedded chord length, so the tree's nearest
    # neighbour is the metric nearest neighbour; re-measure with the metric
    tree = cKDTree(space.embed(Q))
    _, idx = tree.query(space.embed(P))
    return space.distance(P, Q[idx])


def hausdorff_distance(A: CompactSetApprox, B: CompactSetApprox, method: str = "auto") -> float:
    _check_same_space(A, B)
    _require_nonempty(A, B)
    d_ab = nearest_distances(A.space, A.points, B.points, method).max()
    d_ba = nearest_distances(A.space, B.points, A.points, method).max()
    return float(max(d_ab, d_ba))


def directed_distance(A: CompactSetApprox, B: CompactSetApprox) -> float:
    """sup over a in A of d(a, B)."""
    _check_same_space(A, B)
    _require_nonempty(A, B)
    return float(nearest_distances(A.space, A.points, B.points).max())


@njit(cache=True)
def _greedy_keep(emb, h):
    n, k = emb.shape
    heads = Dict.empty(key_type=types.int64, value_type=types.int64)
    nxt = np.full(n, -1, np.int64)
    keep = np.zeros(n, np.bool_)
    h2 = h * h
    ylo, yhi = (-1, 2) if k == 2 else (0, 1)
    for i in range(n):
        cx = np.int64(np.floor(emb[i, 0] / h))
        cy = np.int64(np.floor(emb[i, 1] / h)) if k == 2 else np.int64(0)
        clash = False
        for dx in range(-1, 2):
            for dy in range(ylo, yhi):
                key = (cx + dx) * np.int64(1000003) + (cy + dy)
                j = heads[key] if key in heads else np.int64(-1)
                while j >= 0:
                    d2 = 0.0
                    for c in range(k):
                        t = emb[i, c] - emb[j, c]
                        d2 += t * t
                    if d2 < h2:
                        clash = True
                        break
                    j = nxt[j]
                if clash:
                    break
            if clash:
                break
        if not clash:
            key = cx * np.int64(1000003) + cy
            nxt[i] = heads[key] if key in heads else np.int64(-1)
            heads[key] = i
            keep[i] = True
    return keep


def dedup_points(space: Space, P, eps: float) -> np.ndarray:
    """Greedy thinning: keep a point unless it lies within eps/2 of an earlier kept point."""
    P = np.asarray(P, dtype=float)
    if len(P) <= 1:
        return P
    emb = np.ascontiguousarray(space.embed(P), dtype=np.float64)
    h = space.embedding_radius(eps / 2.0)
    if space.kind == "CompactifiedLine":
        emb = np.where(np.isfinite(emb), emb, 0.0)
    return P[_greedy_keep(emb, h)]


def grid_snap(S: CompactSetApprox, eps: float) -> CompactSetApprox:
    """Thin ``S`` to pairwise separation >= eps/2 with Hausdorff error <= eps/2.

    Kept points are input points, so a repeated snap at the same ``eps`` is the
    identity.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    return CompactSetApprox(S.space, dedup_points(S.space, S.points, eps), eps, allow_empty=S.allow_empty)


def epsilon_net(space: Space, region, eps: float) -> CompactSetApprox:
    """Finite set within ``eps`` of every point of ``region``."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    return CompactSetApprox(space, region.net(eps), eps)


@dataclass(frozen=True)
class LimitEstimate:
    li_points: CompactSetApprox
    ls_points: CompactSetApprox
    tail_window: int


def _hit_counts(space, candidates, tail, tol):
    r = space.embedding_radius(tol) * (1 + 1e-12)
    emb = space.embed(candidates)
    counts = np.zeros(len(candidates), dtype=int)
    for S in tail:
        if S.is_empty:
            continue
        tree = cKDTree(space.embed(S.points))
        d, _ = tree.query(emb, distance_upper_bound=r)
        counts += np.isfinite(d)
    return counts


def estimate_li_ls(orbit, tail_window: int, tol: float) -> LimitEstimate:
    """Estimate the lower/upper Kuratowski limits from the last ``tail_window`` sets.

    A candidate point is in Ls when at least two tail sets come within ``tol`` of
    it, and in Li when every tail set does.  Li may come back empty.
    """
    orbit = list(orbit)
    if tail_window < 2:
        raise ValueError("tail_window must be at least 2")
    if tail_window > len(orbit):
        raise ValueError(f"tail window {tail_window} longer than orbit ({len(orbit)})")
    tail = orbit[-tail_window:]
    space = tail[0].space
    for S in tail:
        if S.space != space:
            raise SpaceMismatchError("orbit mixes spaces")
    pts = np.vstack([S.points for S in tail])
    candidates = dedup_points(space, pts, tol)
    counts = _hit_counts(space, candidates, tail, tol)
    ls = candidates[counts >= 2]
    li = candidates[counts == tail_window]
    return LimitEstimate(
        li_points=CompactSetApprox(space, li, tol, allow_empty=True),
        ls_points=CompactSetApprox(space, ls, tol, allow_empty=True),
        tail_window=tail_window,
    )
