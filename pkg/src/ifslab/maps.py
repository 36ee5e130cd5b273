"""Continuous self-maps as vectorised closures with metadata.

Maps act on ``(n, dim)`` arrays of chart coordinates.  Besides the evaluation
function a ``MapHandle`` may carry a declared fixed set, monotone branches (for
bisection-based preimages), an explicit inverse, and a JSON descriptor from
which the same map can be rebuilt.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from . import regions as rg
from .sets import CompactSetApprox, nearest_distances
from .spaces import CIRCLE, COMPACTIFIED_LINE, REAL_LINE, TWO_PI, UNIT_DISC, Space, SpaceMismatchError, wrap_angle


class MapConstructionError(ValueError):
    pass


class PreimageError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MonotoneBranch:
    """A parameter interval ``[lo, hi]`` on which the map is strictly monotone.

    ``to_param``/``from_param`` translate between points and the scalar
    parameter; by default the parameter is the 1-D chart coordinate.
    """

    lo: float
    hi: float
    increasing: bool = True
    to_param: Optional[Callable] = None
    from_param: Optional[Callable] = None

    def param(self, P) -> np.ndarray:
        P = np.asarray(P, dtype=float)
        return P[:, 0].copy() if self.to_param is None else np.asarray(self.to_param(P), dtype=float)

    def point(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return t.reshape(-1, 1) if self.from_param is None else self.from_param(t)

    def contains_param(self, t, tol=1e-12):
        return (t >= self.lo - tol) & (t <= self.hi + tol)


@dataclass(frozen=True, eq=False)
class MapHandle:
    space: Space
    fn: Callable
    label: str = "map"
    fixed_set: Optional[CompactSetApprox] = None
    branches: tuple = ()
    inverse: Optional[Callable] = None
    domain: object = None
    descriptor: Optional[dict] = None
    repellor_hint: Optional[Callable] = field(default=None, repr=False)

    def eval(self, P) -> np.ndarray:
        P = self.space.normalize(P)
        if len(P) == 0:
            return P
        return self.space.normalize(self.fn(P))

    def __call__(self, x):
        """Evaluate at a single point; returns a float on 1-D charts."""
        out = self.eval(np.asarray(x, dtype=float).reshape(1, self.space.dim))[0]
        return float(out[0]) if self.space.dim == 1 else out

    def apply_inverse(self, P) -> np.ndarray:
        if self.inverse is None:
            raise PreimageError(f"{self.label} has no explicit inverse")
        return self.space.normalize(self.inverse(self.space.normalize(P)))


def _desc(kind, params=None, children=None):
    return {"kind": kind, "params": params or {}, "children": children or []}


def _net(space, pts, eps=1e-9):
    return CompactSetApprox(space, pts, eps)


# ---------------------------------------------------------------------------
# basic maps
# ---------------------------------------------------------------------------

def identity(space: Space, region=None, eps: float = 1e-2) -> MapHandle:
    fixed = None
    if region is not None:
        try:
            fixed = _net(space, region.net(eps), eps)
        except rg.EmptyRegionError:
            fixed = None
    params = {"space": space.kind}
    if region is not None:
        params["region"] = rg.region_to_dict(region)
    return MapHandle(space, lambda P: P.copy(), "id", fixed_set=fixed, inverse=lambda P: P.copy(),
                     domain=region, descriptor=_desc("identity", params))


def constant(space: Space, point) -> MapHandle:
    c = space.normalize(point)[0]
    return MapHandle(space, lambda P: np.broadcast_to(c, P.shape).copy(), f"const{tuple(c)}",
                     fixed_set=_net(space, c[None, :]),
                     descriptor=_desc("constant", {"space": space.kind, "point": c.tolist()}))


def affine(space: Space, scale, offset) -> MapHandle:
    """x -> scale*x + offset; ``scale`` is a scalar or a 2x2 matrix on planar charts."""
    S = np.asarray(scale, dtype=float)
    t = np.asarray(offset, dtype=float).reshape(-1)
    if space.dim == 1:
        fn = lambda P: P * float(S) + t[0]
    elif S.ndim == 0:
        fn = lambda P: P * float(S) + t
    else:
        fn = lambda P: P @ S.T + t
    params = {"space": space.kind, "scale": S.tolist(), "offset": t.tolist()}
    label = f"{S.tolist()}*x+{t.tolist()}"
    return MapHandle(space, fn, label, descriptor=_desc("affine", params))


def translation(space: Space, shift: float) -> MapHandle:
    return MapHandle(space, lambda P: P + shift, f"x+{shift:g}", inverse=lambda P: P - shift,
                     descriptor=_desc("translation", {"space": space.kind, "shift": shift}))


def rotation(angle: float) -> MapHandle:
    return MapHandle(CIRCLE, lambda P: P + angle, f"rot({angle:g})", inverse=lambda P: P - angle,
                     descriptor=_desc("rotation", {"angle": angle}))


# ---------------------------------------------------------------------------
# ALR-map constructors
# ---------------------------------------------------------------------------

def make_interval_alr(a: float, b: float, variant: str = "square", space: Space = REAL_LINE) -> MapHandle:
    """Attracting map on [a, b] fixing exactly a and b; identity off [a, b].

    ``square``: (x-a)^2/(b-a) + a, pushes points down, repellor b.
    ``sqrt``: sqrt((x-a)(b-a)) + a, pushes points up, repellor a.
    """
    if not a < b:
        raise MapConstructionError(f"need a < b, got [{a}, {b}]")
    L = b - a
    if variant == "square":
        core = lambda x: (x - a) ** 2 / L + a
    elif variant == "sqrt":
        core = lambda x: np.sqrt(np.clip((x - a) * L, 0.0, None)) + a
    else:
        raise MapConstructionError(f"unknown variant {variant!r}")

    def fn(P):
        x = P[:, 0]
        inside = (x >= a) & (x <= b)
        return np.where(inside, core(np.clip(x, a, b)), x).reshape(-1, 1)

    return MapHandle(space, fn, f"{variant}-alr[{a:g},{b:g}]",
                     fixed_set=_net(space, [a, b]),
                     branches=(MonotoneBranch(a, b, True),),
                     domain=rg.Interval(a, b),
                     descriptor=_desc("interval_alr", {"a": a, "b": b, "variant": variant, "space": space.kind}))


def _arc_branch(alpha, L):
    def to_param(P):
        u = wrap_angle(np.asarray(P, dtype=float)[:, 0] - alpha)
        # offsets just below 2*pi belong to the alpha end
        return np.where(u > L + (TWO_PI - L) / 2.0, u - TWO_PI, u)

    return MonotoneBranch(0.0, L, True, to_param, lambda t: wrap_angle(alpha + t).reshape(-1, 1))


def make_arc_alr(alpha: float, beta: float) -> MapHandle:
    """Arc map exp(i((arg x - alpha)^2/(beta - alpha) + alpha)), arithmetic mod 2*pi.

    Acts as the identity off the arc; alpha == beta means the whole circle.
    """
    for ang in (alpha, beta):
        if not 0.0 <= ang < TWO_PI:
            raise MapConstructionError("arc endpoints must lie in [0, 2*pi)")
    arc = rg.Arc(alpha, beta)
    L = arc.length

    def fn(P):
        u = wrap_angle(P[:, 0] - alpha)
        inside = u <= L
        return np.where(inside, alpha + u * u / L, P[:, 0]).reshape(-1, 1)

    fixed = [alpha] if L >= TWO_PI else [alpha, beta]
    return MapHandle(CIRCLE, fn, f"arc-alr[{alpha:g},{beta:g}]",
                     fixed_set=_net(CIRCLE, fixed),
                     branches=(_arc_branch(alpha, L),),
                     domain=arc,
                     descriptor=_desc("arc_alr", {"alpha": alpha, "beta": beta}))


def _chord(P):
    x = np.clip(P[:, 0], -1.0, 1.0)
    s = np.sqrt(1.0 - x * x)
    return x, s


def make_disc_alr(boundary_eps: float = 1e-2) -> MapHandle:
    """ALR map of the closed unit disc sliding each vertical chord towards its lower end.

    With a(z) = x - i*sqrt(1-x^2) and b(z) = x + i*sqrt(1-x^2),
    phi(z) = |(z-a)/(b-a)| (z-a) + a.  Boundary points are fixed.
    """

    def fn(P):
        x, s = _chord(P)
        y = P[:, 1]
        ok = s > 1e-15
        t = np.where(ok, (y + s) / np.where(ok, 2.0 * s, 1.0), 1.0)
        return np.column_stack([P[:, 0], np.where(ok, -s + t * (y + s), y)])

    def inv(P):
        x, s = _chord(P)
        y = P[:, 1]
        ok = s > 1e-15
        t = np.where(ok, np.clip((y + s) / np.where(ok, 2.0 * s, 1.0), 0.0, 1.0), 1.0)
        return np.column_stack([P[:, 0], np.where(ok, -s + 2.0 * s * np.sqrt(t), y)])

    def hint(P):
        x, s = _chord(P)
        return np.column_stack([P[:, 0], s])

    return MapHandle(UNIT_DISC, fn, "disc-alr",
                     fixed_set=_net(UNIT_DISC, _circle_points(boundary_eps)),
                     inverse=inv, domain=rg.DiscRegion(), repellor_hint=hint,
                     descriptor=_desc("disc_alr"))


def _circle_points(eps):
    t = rg.Arc(0.0, 0.0).net(eps)[:, 0]
    return np.column_stack([np.cos(t), np.sin(t)])


def disc_closed_form(z, n: int) -> np.ndarray:
    """n-th iterate of the disc map in closed form: a + s^(2^n - 1) (z - a), s = |z-a|/|b-a|."""
    P = np.atleast_2d(np.asarray(z, dtype=float))
    x, s = _chord(P)
    y = P[:, 1]
    ratio = (y + s) / (2.0 * s)
    return np.column_stack([P[:, 0], -s + ratio ** (2 ** n - 1) * (y + s)])


def make_kwietniak_map() -> MapHandle:
    """x -> x + 1 on the compactified line, fixing the point at infinity."""
    return MapHandle(COMPACTIFIED_LINE, lambda P: P + 1.0, "kwietniak",
                     fixed_set=_net(COMPACTIFIED_LINE, [np.inf]),
                     inverse=lambda P: P - 1.0,
                     repellor_hint=lambda P: np.full_like(P, np.inf),
                     descriptor=_desc("kwietniak"))


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------

def union_maps(pieces, check_eps: float = 1e-3, tol: float = 1e-9) -> MapHandle:
    """Glue maps defined on regions; overlaps must be fixed by every map involved."""
    pieces = list(pieces)
    if not pieces:
        raise MapConstructionError("no pieces")
    space = pieces[0][1].space
    for _, m in pieces:
        if m.space != space:
            raise SpaceMismatchError("pieces live on different spaces")
    if len(pieces) == 1:
        return pieces[0][1]
    for i, (Ri, mi) in enumerate(pieces):
        cand = Ri.samples(max(int(2 / check_eps), 64))
        for Rj, mj in pieces[i + 1:]:
            both = cand[Rj.contains(cand, 1e-12)]
            if len(both) == 0:
                continue
            for m in (mi, mj):
                moved = space.distance(m.eval(both), both) > tol
                if moved.any():
                    p = both[np.argmax(moved)]
                    raise MapConstructionError(f"overlap point {p.tolist()} moved by {m.label}")

    def fn(P):
        out = np.full_like(P, np.nan)
        todo = np.ones(len(P), dtype=bool)
        for R, m in pieces:
            mask = todo & R.contains(P)
            if mask.any():
                out[mask] = m.eval(P[mask])
                todo &= ~mask
        if todo.any():
            raise ValueError(f"point {P[np.argmax(todo)].tolist()} outside every region")
        return out

    fixed = [m.fixed_set.points for _, m in pieces if m.fixed_set is not None]
    branches = tuple(b for _, m in pieces for b in m.branches)
    desc = _desc("union", {"regions": [rg.region_to_dict(R) for R, _ in pieces]},
                 [m.descriptor for _, m in pieces])
    return MapHandle(space, fn, "U(" + ",".join(m.label for _, m in pieces) + ")",
                     fixed_set=_net(space, np.vstack(fixed)) if fixed else None,
                     branches=branches, descriptor=desc)


def conjugate_map(phi: MapHandle, h: Callable, h_inv: Callable, target_space: Space,
                  samples=None, tol: float = 1e-9, descriptor: Optional[dict] = None) -> MapHandle:
    """h o phi o h^-1 on ``target_space``; h maps phi's space onto the target."""
    if samples is None:
        if phi.domain is not None:
            samples = phi.domain.samples(1000)
        else:
            samples = phi.space.sample(1000, np.random.default_rng(0))
    samples = phi.space.normalize(samples)
    back = phi.space.normalize(h_inv(target_space.normalize(h(samples))))
    err = phi.space.distance(back, samples)
    if (err > tol).any():
        k = int(np.argmax(err > tol))
        raise MapConstructionError(f"h_inv(h(p)) != p at {samples[k].tolist()} (error {err[k]:.3g})")

    def fn(P):
        return h(phi.eval(h_inv(P)))

    inverse = None
    if phi.inverse is not None:
        inverse = lambda P: h(phi.apply_inverse(h_inv(P)))
    branches = tuple(
        MonotoneBranch(b.lo, b.hi, b.increasing,
                       (lambda P, b=b: b.param(phi.space.normalize(h_inv(P)))),
                       (lambda t, b=b: target_space.normalize(h(b.point(t)))))
        for b in phi.branches)
    fixed = None
    if phi.fixed_set is not None:
        fixed = _net(target_space, h(phi.fixed_set.points))
    hint = None
    if phi.repellor_hint is not None:
        hint = lambda P: h(phi.repellor_hint(phi.space.normalize(h_inv(P))))
    return MapHandle(target_space, fn, f"conj({phi.label})", fixed_set=fixed, branches=branches,
                     inverse=inverse, repellor_hint=hint,
                     descriptor=descriptor or _desc("conjugate", {}, [phi.descriptor]))


def conjugate_affine(phi: MapHandle, scale: float, offset: float) -> MapHandle:
    """Conjugate a 1-D map by h(x) = scale*x + offset."""
    d = _desc("conjugate", {"homeomorphism": "affine", "scale": scale, "offset": offset}, [phi.descriptor])
    return conjugate_map(phi, lambda P: P * scale + offset, lambda P: (P - offset) / scale, phi.space,
                         descriptor=d)


def conjugate_to_circle(phi: MapHandle, alpha: float = 0.0) -> MapHandle:
    """Carry an interval map onto the circle through x -> e^{ix}, unwrapping angles from ``alpha``."""
    d = _desc("conjugate", {"homeomorphism": "angle", "alpha": alpha}, [phi.descriptor])
    return conjugate_map(phi, lambda P: wrap_angle(P), lambda P: alpha + wrap_angle(P - alpha), CIRCLE,
                         descriptor=d)


def make_retraction(space: Space, region) -> MapHandle:
    """Nearest-point retraction onto ``region``."""
    if not hasattr(region, "project"):
        raise MapConstructionError(f"unsupported region {region!r}")
    if isinstance(region, rg.Polygon) or isinstance(region, rg.Box) or isinstance(region, rg.DiscRegion):
        if space.dim != 2:
            raise MapConstructionError("planar region on a 1-D space")
    fixed = None
    try:
        fixed = _net(space, region.net(1e-2), 1e-2)
    except rg.EmptyRegionError:
        pass
    return MapHandle(space, region.project, f"r[{type(region).__name__}]", fixed_set=fixed, domain=region,
                     descriptor=_desc("retraction", {"space": space.kind, "region": rg.region_to_dict(region)}))


def compose(outer: MapHandle, inner: MapHandle) -> MapHandle:
    """outer o inner."""
    if outer.space != inner.space:
        raise SpaceMismatchError(f"{outer.label} and {inner.label} live on different spaces")
    inverse = None
    if outer.inverse is not None and inner.inverse is not None:
        inverse = lambda P: inner.apply_inverse(outer.apply_inverse(P))
    return MapHandle(outer.space, lambda P: outer.eval(inner.eval(P)), f"{outer.label}∘{inner.label}",
                     inverse=inverse, descriptor=_desc("compose", {}, [outer.descriptor, inner.descriptor]))


def with_label(m: MapHandle, label: str) -> MapHandle:
    return replace(m, label=label)


# ---------------------------------------------------------------------------
# preimages
# ---------------------------------------------------------------------------

def preimage_on_branch(phi: MapHandle, y, branch: MonotoneBranch, tol: float = 1e-12,
                       lo: Optional[float] = None, hi: Optional[float] = None, max_iter: int = 200) -> np.ndarray:
    """Bisection for x on the branch (optionally a sub-interval) with d(phi(x), y) <= tol."""
    y = phi.space.normalize(y)[:1]
    lo = branch.lo if lo is None else lo
    hi = branch.hi if hi is None else hi
    target = branch.param(y)[0]

    def g(t):
        return branch.param(phi.eval(branch.point(t)))[0] - target

    def resid(t):
        return float(phi.space.distance(phi.eval(branch.point(t)), y)[0])

    for end in (lo, hi):
        if resid(end) <= tol:
            return branch.point(end)[0]
    g_lo, g_hi = g(lo), g(hi)
    if g_lo * g_hi > 0:
        raise PreimageError("y not attained on branch")
    best_t, best_r = lo, math.inf
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        r = resid(mid)
        if r < best_r:
            best_t, best_r = mid, r
        if r <= tol or mid in (lo, hi):
            break
        g_mid = g(mid)
        if (g_mid < 0) == (g_lo < 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    if best_r > tol:
        raise PreimageError(f"bisection stalled with residual {best_r:.3g}")
    return branch.point(best_t)[0]


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

def _space(name):
    return Space(name)


def map_from_descriptor(d: dict) -> MapHandle:
    """Rebuild a map from its ``{kind, params, children}`` descriptor."""
    kind = d["kind"]
    p = d.get("params", {})
    ch = [map_from_descriptor(c) for c in d.get("children", [])]
    if kind == "identity":
        region = rg.region_from_dict(p["region"]) if "region" in p else None
        return identity(_space(p.get("space", "RealLine")), region)
    if kind == "constant":
        return constant(_space(p["space"]), p["point"])
    if kind == "affine":
        return affine(_space(p["space"]), p["scale"], p["offset"])
    if kind == "translation":
        return translation(_space(p["space"]), p["shift"])
    if kind == "rotation":
        return rotation(p["angle"])
    if kind == "interval_alr":
        return make_interval_alr(p["a"], p["b"], p.get("variant", "square"), _space(p.get("space", "RealLine")))
    if kind == "arc_alr":
        return make_arc_alr(p["alpha"], p["beta"])
    if kind == "disc_alr":
        return make_disc_alr()
    if kind == "kwietniak":
        return make_kwietniak_map()
    if kind == "union":
        return union_maps(list(zip([rg.region_from_dict(r) for r in p["regions"]], ch)))
    if kind == "conjugate":
        hom = p.get("homeomorphism")
        if hom == "affine":
            return conjugate_affine(ch[0], p["scale"], p["offset"])
        if hom == "angle":
            return conjugate_to_circle(ch[0], p.get("alpha", 0.0))
        raise MapConstructionError("conjugation by an unnamed homeomorphism is not serializable")
    if kind == "retraction":
        return make_retraction(_space(p["space"]), rg.region_from_dict(p["region"]))
    if kind == "compose":
        return compose(ch[0], ch[1])
    if kind == "gallery_phi":
        from . import gallery
        return gallery.preset_phi(p["preset"], **{k: v for k, v in p.items() if k != "preset"})
    if kind in _EXTRA_KINDS:
        return _EXTRA_KINDS[kind](p, ch)
    raise MapConstructionError(f"unknown map kind {kind!r}")


_EXTRA_KINDS: dict = {}


def register_kind(name: str, builder: Callable) -> None:
    _EXTRA_KINDS[name] = builder
