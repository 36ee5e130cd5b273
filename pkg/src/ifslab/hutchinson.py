"""The Barnsley-Hutchinson operator S -> union of f(S) on point-cloud approximations."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .maps import MapHandle
from .sets import CompactSetApprox, dedup_points, hausdorff_distance
from .spaces import Space, SpaceMismatchError

DEFAULT_POINT_CAP = 2_000_000


@dataclass(frozen=True, eq=False)
class IfsSystem:
    space: Space
    maps: tuple
    target: Optional[CompactSetApprox] = None

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.maps:
            raise ValueError("an IFS needs at least one map")
        for m in self.maps:
            if m.space != self.space:
                raise SpaceMismatchError(f"map {m.label} is on {m.space.kind}, system on {self.space.kind}")
        if self.target is not None and self.target.space != self.space:
            raise SpaceMismatchError("target lives on another space")

    def with_maps(self, *extra: MapHandle) -> "IfsSystem":
        return IfsSystem(self.space, self.maps + tuple(extra), self.target)

    def with_target(self, target: CompactSetApprox) -> "IfsSystem":
        return IfsSystem(self.space, self.maps, target)


def _images(F: IfsSystem, P: np.ndarray, threads: int = 1) -> np.ndarray:
    if threads > 1 and len(F.maps) > 1 and len(P) >= 256:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda m: m.eval(P), F.maps))
    else:
        parts = [m.eval(P) for m in F.maps]
    # map index major, point index minor: fixes which duplicate survives
    return np.vstack(parts)


def apply_operator(F: IfsSystem, S: CompactSetApprox, eps: float, threads: int = 1) -> CompactSetApprox:
    if S.space != F.space:
        raise SpaceMismatchError(f"set on {S.space.kind}, system on {F.space.kind}")
    if S.is_empty:
        raise ValueError("operator applied to an empty set")
    pts = dedup_points(F.space, _images(F, S.points, threads), eps)
    return CompactSetApprox(F.space, pts, eps)


@dataclass(eq=False)
class OrbitRecord:
    system: IfsSystem
    initial: CompactSetApprox
    steps: list
    distances_to_target: Optional[list] = None
    epsilon: float = 0.0
    truncated: bool = False
    point_counts: list = field(default_factory=list)

    @property
    def final(self) -> CompactSetApprox:
        return self.steps[-1]


def iterate_orbit(F: IfsSystem, S0: CompactSetApprox, n: int, eps: float,
                  point_cap: int = DEFAULT_POINT_CAP, threads: int = 1) -> OrbitRecord:
    """Run S0, F(S0), ..., F^n(S0) at fixed resolution ``eps``.

    If the unthinned image of a step would exceed ``point_cap`` points the
    record stops early with ``truncated=True``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    steps = [S0]
    dists = [hausdorff_distance(S0, F.target)] if F.target is not None else None
    truncated = False
    S = S0
    for _ in range(n):
        if len(S) * len(F.maps) > point_cap:
            truncated = True
            break
        S = apply_operator(F, S, eps, threads)
        steps.append(S)
        if dists is not None:
            dists.append(hausdorff_distance(S, F.target))
    return OrbitRecord(F, S0, steps, dists, eps, truncated, [len(s) for s in steps])


@dataclass(frozen=True)
class FixedSetReport:
    is_fixed: bool
    defect: float


def fixed_set_check(F: IfsSystem, A: CompactSetApprox, eps: float) -> FixedSetReport:
    defect = hausdorff_distance(apply_operator(F, A, eps), A)
    return FixedSetReport(defect <= 2 * eps, defect)
