"""Ready-made systems: gap-conjugated ALR maps on the classical fractals and the
piecewise circle / line constructions built from retractions.

For the fractals every map of W is ``q -> ratio*q + c_i`` in normalised
coordinates ``q`` (identical to the chart for Cantor and the carpet, simplex
coordinates for the triangle).  A point of the hull D is resolved digit by
digit; the first time it falls in the central hole I0 we know its gap address
``u`` and the remainder ``r`` in I0, and phi acts there as
``w_u o phi0 o w_u^{-1}``.  Points with no hole digit within
``membership_depth`` are treated as fractal points and fixed.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import maps as mp
from . import regions as rg
from .analysis import build_retract_ifs
from .hutchinson import IfsSystem
from .sets import CompactSetApprox, dedup_points, nearest_distances
from .spaces import CIRCLE, COMPACTIFIED_LINE, PLANE, REAL_LINE, TWO_PI, Space, wrap_angle

SQRT3 = math.sqrt(3.0)
THIRD, TWO_THIRDS = 1.0 / 3.0, 2.0 / 3.0


# ---------------------------------------------------------------------------
# hole maps (phi0) in normalised coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HoleMap:
    fn: Callable
    inverse: Optional[Callable] = None
    hint: Optional[Callable] = None


def interval_hole_map(lo=THIRD, hi=TWO_THIRDS) -> HoleMap:
    L = hi - lo
    fn = lambda R: (np.clip(R, lo, hi) - lo) ** 2 / L + lo
    inv = lambda R: np.sqrt(np.clip((R - lo) * L, 0.0, None)) + lo
    return HoleMap(fn, inv, lambda R: np.full_like(R, hi))


def polygon_hole_map(vertices) -> HoleMap:
    """Disc ALR map carried onto a convex polygon by the radial homeomorphism about its centroid."""
    poly = rg.Polygon(vertices)
    V = np.array(poly.vertices)
    c = V.mean(axis=0)
    normals, offsets = poly._halfplanes()
    levels = offsets - normals @ c
    disc = mp.make_disc_alr()

    def gauge(U):
        return np.max(U @ normals.T / levels, axis=1)

    def to_disc(P):
        U = P - c
        n2 = np.hypot(U[:, 0], U[:, 1])
        s = np.where(n2 > 0, gauge(U) / np.where(n2 > 0, n2, 1.0), 0.0)
        return U * s[:, None]

    def from_disc(Z):
        n2 = np.hypot(Z[:, 0], Z[:, 1])
        g = gauge(Z)
        s = np.where(g > 0, n2 / np.where(g > 0, g, 1.0), 0.0)
        return Z * s[:, None] + c

    return HoleMap(lambda P: from_disc(disc.fn(to_disc(P))),
                   lambda P: from_disc(disc.inverse(to_disc(P))),
                   lambda P: from_disc(disc.repellor_hint(to_disc(P))))


# ---------------------------------------------------------------------------
# gap systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GapAddress:
    word: tuple

    @property
    def depth(self) -> int:
        return len(self.word)


IN_FRACTAL = "in fractal"


@dataclass(eq=False)
class GapSystem:
    name: str
    W: IfsSystem
    D: object
    hole: object
    ratio: float
    offsets: np.ndarray
    in_hole: Callable
    pick_digit: Callable
    to_norm: Callable
    from_norm: Callable
    phi0: HoleMap
    clip_norm: Callable
    anchors: np.ndarray
    ref_depth: int
    membership_depth: int
    simplified: bool = False
    phi: mp.MapHandle = None
    fractal_ref: CompactSetApprox = None
    hole_center: np.ndarray = None

    @property
    def space(self) -> Space:
        return self.W.space

    # -- addressing ---------------------------------------------------------
    def decompose(self, P, depth=None):
        """Return (depth_found, remainder, prefix, digits) for points of D (normalised coords).

        depth_found is -1 for points treated as fractal members.
        """
        depth = self.membership_depth if depth is None else depth
        q = self.clip_norm(self.to_norm(np.asarray(P, dtype=float)))
        n = len(q)
        found = np.full(n, -1)
        rem = np.zeros_like(q)
        prefix = np.zeros_like(q)
        digits = np.full((n, depth), -1, dtype=np.int16)
        t = np.zeros_like(q)
        scale = 1.0
        active = np.ones(n, dtype=bool)
        for k in range(depth + 1):
            idx = np.flatnonzero(active)
            if idx.size == 0:
                break
            qa = q[idx]
            hole = self.in_hole(qa)
            hit = idx[hole]
            found[hit] = k
            rem[hit] = qa[hole]
            prefix[hit] = t[hit]
            active[hit] = False
            if k == depth:
                break
            go = idx[~hole]
            d = self.pick_digit(q[go])
            digits[go, k] = d
            c = self.offsets[d]
            t[go] = t[go] + scale * c
            q[go] = self.clip_norm((q[go] - c) / self.ratio)
            scale *= self.ratio
        return found, rem, prefix, digits

    def word_affine(self, word):
        """(scale, offset) with w_word(q) = scale*q + offset in normalised coordinates."""
        scale = 1.0
        off = np.zeros(self.offsets.shape[1])
        for i in word:
            off = off + scale * self.offsets[i]
            scale *= self.ratio
        return scale, off

    def apply_word(self, word, P):
        s, off = self.word_affine(word)
        return self.from_norm(s * self.to_norm(np.asarray(P, dtype=float)) + off)

    def hole_points(self, n_side=3):
        """A few interior points of I0 (world coordinates)."""
        c = self.hole_center
        V = self.hole_vertices()
        pts = [c]
        for f in np.linspace(0.15, 0.85, n_side):
            pts.extend(c + f * (V - c))
        return np.array(pts)

    def hole_vertices(self):
        if isinstance(self.hole, rg.Interval):
            return np.array([[self.hole.lo], [self.hole.hi]])
        if isinstance(self.hole, rg.Box):
            h = self.hole
            return np.array([[h.xlo, h.ylo], [h.xhi, h.ylo], [h.xhi, h.yhi], [h.xlo, h.yhi]])
        return np.array(self.hole.vertices)

    # -- phi ------------------------------------------------------------------
    def _phi_fn(self, P):
        out = np.array(P, dtype=float, copy=True)
        inside = self.D.contains(P, 1e-12)
        out[~inside] = self.D.project(P[~inside])
        if self.simplified:
            Pi = self.hole.project(P[inside])
            q = self.to_norm(Pi)
            out[inside] = self.from_norm(self.phi0.fn(q))
            return out
        idx = np.flatnonzero(inside)
        found, rem, prefix, _ = self.decompose(P[idx])
        g = found >= 0
        if g.any():
            k = found[g]
            scale = self.ratio ** k
            q_new = prefix[g] + scale[:, None] * self.phi0.fn(rem[g])
            out[idx[g]] = self.from_norm(q_new)
        return out

    def _phi_conj(self, P, which):
        found, rem, prefix, _ = self.decompose(P)
        out = np.array(P, dtype=float, copy=True)
        g = found >= 0
        if g.any():
            scale = self.ratio ** found[g]
            out[g] = self.from_norm(prefix[g] + scale[:, None] * which(rem[g]))
        return out

    def build_phi(self):
        label = f"phi[{self.name}{'-simplified' if self.simplified else ''}]"
        desc = {"kind": "gallery_phi", "params": {"preset": self.name, "simplified": self.simplified}, "children": []}
        branches = ()
        if self.space.dim == 1:
            branches = (mp.MonotoneBranch(self.hole.lo, self.hole.hi, True),)
        inverse = hint = None
        if not self.simplified:
            inverse = lambda P: self._phi_conj(P, self.phi0.inverse)
            hint = lambda P: self._phi_conj(P, self.phi0.hint)
        else:
            inverse = lambda P: self.from_norm(self.phi0.inverse(self.to_norm(P)))
            hint = lambda P: self.from_norm(self.phi0.hint(self.to_norm(P)))
        return mp.MapHandle(self.space, self._phi_fn, label, fixed_set=self.fractal_ref,
                            branches=branches, inverse=inverse, repellor_hint=hint,
                            domain=self.D, descriptor=desc)

    def build_reference(self, depth=None):
        depth = self.ref_depth if depth is None else depth
        Q = self.to_norm(self.anchors)
        for _ in range(depth):
            Q = np.vstack([self.ratio * Q + c for c in self.offsets])
            Q = np.unique(np.round(Q, 13), axis=0)
        P = self.from_norm(Q)
        return CompactSetApprox(self.space, P, self.ref_resolution(depth))

    def ref_resolution(self, depth):
        cell = self.ratio ** depth
        if self.name == "cantor":
            return cell / 2
        if self.name == "sierpinski-carpet":
            return cell / math.sqrt(2)
        return cell / SQRT3


def cell_centers(system: GapSystem, depth: int) -> CompactSetApprox:
    """One point per depth-``depth`` cell: every word applied to the centre of D."""
    Q = system.to_norm(system.hole_center[None, :])
    for _ in range(depth):
        Q = np.vstack([system.ratio * Q + c for c in system.offsets])
    return CompactSetApprox(system.space, system.from_norm(Q), system.ratio ** depth)


def gap_address(x, system: GapSystem):
    """Gap address of x, or ``IN_FRACTAL`` when no hole digit shows up within membership_depth."""
    P = system.space.normalize(x)[:1]
    if not system.D.contains(P, 1e-12)[0]:
        raise ValueError(f"{P[0].tolist()} lies outside the hull D")
    found, _, _, digits = system.decompose(P)
    if found[0] < 0:
        return IN_FRACTAL
    return GapAddress(tuple(int(d) for d in digits[0, :found[0]]))


def _finish(system: GapSystem) -> GapSystem:
    if system.fractal_ref is None:
        system.fractal_ref = system.build_reference()
    system.phi = system.build_phi()
    system.W = IfsSystem(system.W.space, system.W.maps, system.fractal_ref)
    return system


def _norm_maps(space, ratio, offsets, from_norm, to_norm, M=None):
    maps = []
    for i, c in enumerate(offsets):
        if M is None:
            m = mp.affine(space, ratio, c if space.dim == 2 else c[0])
        else:
            # conjugate q -> ratio*q + c back to world coordinates
            m = mp.affine(space, ratio * np.eye(2), M @ c)
        maps.append(mp.with_label(m, f"w{i}"))
    return maps


def cantor_system(ref_depth: int = 14, membership_depth: int = 24, simplified: bool = False,
                  phi0: Optional[HoleMap] = None) -> GapSystem:
    """Cantor set with W = {x/3, (x+2)/3}, D = [0, 1], I0 = (1/3, 2/3)."""
    offsets = np.array([[0.0], [TWO_THIRDS]])
    ident = lambda Q: np.asarray(Q, dtype=float)
    W = IfsSystem(REAL_LINE, _norm_maps(REAL_LINE, THIRD, offsets, ident, ident))
    sys_ = GapSystem(
        name="cantor", W=W, D=rg.Interval(0.0, 1.0), hole=rg.Interval(THIRD, TWO_THIRDS),
        ratio=THIRD, offsets=offsets,
        in_hole=lambda Q: (Q[:, 0] > THIRD) & (Q[:, 0] < TWO_THIRDS),
        pick_digit=lambda Q: (Q[:, 0] >= TWO_THIRDS).astype(int),
        to_norm=ident, from_norm=ident, phi0=phi0 or interval_hole_map(),
        clip_norm=lambda Q: np.clip(Q, 0.0, 1.0), anchors=np.array([[0.0], [1.0]]),
        ref_depth=ref_depth, membership_depth=membership_depth, simplified=simplified,
        hole_center=np.array([0.5]),
    )
    return _finish(sys_)


def sierpinski_carpet_system(ref_depth: int = 5, membership_depth: int = 14, simplified: bool = False) -> GapSystem:
    """Carpet with the 8 maps (q + (i, j))/3, D = unit square, I0 = open middle square."""
    cells = [(i, j) for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    offsets = np.array(cells, dtype=float) / 3.0
    lookup = np.full((3, 3), -1)
    for k, (i, j) in enumerate(cells):
        lookup[i, j] = k

    def coord_digit(v):
        return np.where(v <= THIRD, 0, np.where(v >= TWO_THIRDS, 2, 1))

    ident = lambda Q: np.asarray(Q, dtype=float)
    W = IfsSystem(PLANE, _norm_maps(PLANE, THIRD, offsets, ident, ident))
    hole = rg.Box(THIRD, TWO_THIRDS, THIRD, TWO_THIRDS)
    verts = [(THIRD, THIRD), (TWO_THIRDS, THIRD), (TWO_THIRDS, TWO_THIRDS), (THIRD, TWO_THIRDS)]
    sys_ = GapSystem(
        name="sierpinski-carpet", W=W, D=rg.Box(0.0, 1.0, 0.0, 1.0), hole=hole,
        ratio=THIRD, offsets=offsets,
        in_hole=lambda Q: ((Q > THIRD) & (Q < TWO_THIRDS)).all(axis=1),
        pick_digit=lambda Q: lookup[coord_digit(Q[:, 0]), coord_digit(Q[:, 1])],
        to_norm=ident, from_norm=ident, phi0=polygon_hole_map(verts),
        clip_norm=lambda Q: np.clip(Q, 0.0, 1.0),
        anchors=np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]),
        ref_depth=ref_depth, membership_depth=membership_depth, simplified=simplified,
        hole_center=np.array([0.5, 0.5]),
    )
    return _finish(sys_)


_TRI_M = np.array([[1.0, 0.5], [0.0, SQRT3 / 2.0]])
_TRI_MINV = np.linalg.inv(_TRI_M)


def _simplex_clip(Q):
    Q = np.clip(Q, 0.0, 1.0)
    s = Q.sum(axis=1)
    over = s > 1.0
    Q[over] = Q[over] / s[over, None]
    return Q


def sierpinski_triangle_system(ref_depth: int = 7, membership_depth: int = 24,
                               simplified: bool = False) -> GapSystem:
    """Triangle on (0,0), (1,0), (1/2, sqrt(3)/2) with the three half-scale maps."""
    offsets = np.array([[0.0, 0.0], [0.5, 0.0], [0.0, 0.5]])
    to_norm = lambda P: np.asarray(P, dtype=float) @ _TRI_MINV.T
    from_norm = lambda Q: np.asarray(Q, dtype=float) @ _TRI_M.T
    W = IfsSystem(PLANE, _norm_maps(PLANE, 0.5, offsets, from_norm, to_norm, _TRI_M))
    hole_q = [(0.5, 0.0), (0.5, 0.5), (0.0, 0.5)]
    hole_world = rg.Polygon([tuple(_TRI_M @ np.array(v)) for v in hole_q])

    def in_hole(Q):
        u, v = Q[:, 0], Q[:, 1]
        return (u < 0.5) & (v < 0.5) & (u + v > 0.5)

    def pick(Q):
        return np.where(Q[:, 0] >= 0.5, 1, np.where(Q[:, 1] >= 0.5, 2, 0))

    sys_ = GapSystem(
        name="sierpinski-triangle", W=W, D=rg.Polygon([(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2.0)]),
        hole=hole_world, ratio=0.5, offsets=offsets, in_hole=in_hole, pick_digit=pick,
        to_norm=to_norm, from_norm=from_norm, phi0=polygon_hole_map(hole_q),
        clip_norm=_simplex_clip, anchors=np.array([[0.0, 0.0], [1.0, 0.0], [0.5, SQRT3 / 2.0]]),
        ref_depth=ref_depth, membership_depth=membership_depth, simplified=simplified,
        hole_center=from_norm(np.array([[1.0 / 3.0, 1.0 / 3.0]]))[0],
    )
    return _finish(sys_)


# ---------------------------------------------------------------------------
# checks on gap systems
# ---------------------------------------------------------------------------

@dataclass
class CheckReport:
    passed: bool
    max_defect: float = 0.0
    failures: list = field(default_factory=list)


def conjugation_identity_check(system: GapSystem, words, w_index: int, n_points: int = 100,
                               tol: float = 1e-12) -> CheckReport:
    """For gaps I = w_u(I0): the address of w(I) is (w_index,) + u and w∘w_u = w_{w(I)}."""
    w = system.W.maps[w_index]
    H = system.hole_points()
    rng = np.random.default_rng(0)
    worst = 0.0
    fails = []
    for u in words:
        u = tuple(u.word if isinstance(u, GapAddress) else u)
        gap_pt = system.apply_word(u, H[:1])
        addr = gap_address(w.eval(gap_pt), system)
        expected = (w_index,) + u
        if addr == IN_FRACTAL or addr.word != expected:
            fails.append((u, addr))
        S = system.from_norm(rng.uniform(0.0, 1.0, size=(n_points, system.offsets.shape[1])))
        S = system.D.project(S)
        lhs = w.eval(system.apply_word(u, S))
        rhs = system.apply_word(expected, S)
        worst = max(worst, float(system.space.distance(lhs, rhs).max()))
    if worst > tol:
        fails.append(("affine", worst))
    return CheckReport(not fails, worst, fails)


def commutativity_check(system: GapSystem, samples: CompactSetApprox, tol: float = 1e-10,
                        phi: Optional[mp.MapHandle] = None) -> CheckReport:
    """max over samples x in D and w in W of d(phi(w(x)), w(phi(x)))."""
    phi = phi or system.phi
    X = samples.points
    worst = 0.0
    for w in system.W.maps:
        lhs = phi.eval(w.eval(X))
        rhs = w.eval(phi.eval(X))
        worst = max(worst, float(system.space.distance(lhs, rhs).max()))
    return CheckReport(worst <= tol, worst)


def all_words(n_maps: int, depth: int):
    for k in range(depth + 1):
        yield from itertools.product(range(n_maps), repeat=k)


def _words_and_offsets(system: GapSystem, k: int):
    """All words of length k (rows) with their normalised offsets, in lexicographic order."""
    m = len(system.W.maps)
    words = np.zeros((1, 0), dtype=np.int16)
    offs = np.zeros((1, system.offsets.shape[1]))
    for _ in range(k):
        words = np.vstack([np.column_stack([np.full(len(words), i, dtype=np.int16), words]) for i in range(m)])
        offs = np.vstack([system.offsets[i] + system.ratio * offs for i in range(m)])
    return words, offs


def gap_invariance_check(system: GapSystem, depth: int, chunk: int = 100_000) -> CheckReport:
    """phi maps sample points of every gap of depth <= ``depth`` back into the same gap."""
    Hq = system.to_norm(system.hole_points())
    fails = []
    for k in range(depth + 1):
        words, offs = _words_and_offsets(system, k)
        scale = system.ratio ** k
        n_bad = 0
        step = max(1, chunk // len(Hq))
        for i in range(0, len(words), step):
            Q = (scale * Hq[None, :, :] + offs[i:i + step, None, :]).reshape(-1, Hq.shape[1])
            out = system.phi.eval(system.from_norm(Q))
            found, _, _, digits = system.decompose(out, depth=k)
            bad = found != k
            if k:
                want = np.repeat(words[i:i + step], len(Hq), axis=0)
                bad |= (digits[:, :k] != want).any(axis=1)
            n_bad += int(bad.sum())
        if n_bad:
            fails.append((k, n_bad))
    return CheckReport(not fails, 0.0, fails)


def phi_image_check(system: GapSystem, n: int = 10_000, window=(-1.0, 2.0), eps: float = 1e-9) -> CheckReport:
    rng = np.random.default_rng(1)
    X = rng.uniform(window[0], window[1], size=(n, system.space.dim))
    out = system.phi.eval(X)
    ok = system.D.contains(out, eps)
    worst = float(nearest_distances(system.space, out, system.D.project(out)).max())
    return CheckReport(bool(ok.all()), worst)


def hull_check(system: GapSystem, n: int = 10_000) -> CheckReport:
    """W(D) ⊆ D on samples of D."""
    D = system.D
    X = D.samples(n)
    out = np.vstack([w.eval(X) for w in system.W.maps])
    ok = D.contains(out, 1e-12)
    return CheckReport(bool(ok.all()), float((~ok).sum()))


# ---------------------------------------------------------------------------
# circle and line constructions
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class PiecewiseExample:
    F: IfsSystem
    A: CompactSetApprox
    phi: mp.MapHandle
    gaps: list
    variants: dict = field(default_factory=dict)


def _two_map_arc_system(alpha, L):
    def w(shift):
        return mp.MapHandle(CIRCLE, lambda P: alpha + shift + wrap_angle(P - alpha) / 2.0,
                            f"arc-half({alpha:g}+{shift:g})")
    return IfsSystem(CIRCLE, [w(0.0), w(L / 2.0)])


def _parse_parts(parts):
    out = []
    for p in parts:
        if np.ndim(p) == 0:
            out.append((float(p), float(p)))
        else:
            lo, hi = p
            out.append((float(lo), float(hi)))
    return out


def circle_example(parts, eps: float = 1e-3) -> PiecewiseExample:
    """A = finite disjoint union of closed arcs (alpha, beta) or points on the circle."""
    parts = _parse_parts(parts)
    if not parts:
        raise ValueError("need at least one arc or point")
    arcs = [(float(wrap_angle(lo)), float(wrap_angle(hi))) for lo, hi in parts]
    full_circle = any(hi - lo >= TWO_PI for lo, hi in parts)
    if full_circle:
        A = CompactSetApprox(CIRCLE, rg.Arc(0.0, 0.0).net(eps), eps)
        golden = math.pi * (3.0 - math.sqrt(5.0))
        F = IfsSystem(CIRCLE, [mp.identity(CIRCLE), mp.rotation(golden)], A)
        return PiecewiseExample(F, A, mp.identity(CIRCLE), [])
    arcs.sort()
    lens = [float(wrap_angle(hi - lo)) for lo, hi in arcs]
    for k, (lo, hi) in enumerate(arcs):
        nxt_lo = arcs[(k + 1) % len(arcs)][0]
        room = float(wrap_angle(nxt_lo - lo)) if len(arcs) > 1 else TWO_PI
        if len(arcs) > 1 and lens[k] >= room:
            raise ValueError("arcs overlap")
    gaps = []
    for k, (lo, hi) in enumerate(arcs):
        a_k = hi
        b_k = arcs[(k + 1) % len(arcs)][0]
        gaps.append((a_k, b_k))
    pieces = []
    for (a_k, b_k) in gaps:
        pieces.append((rg.Arc(a_k, b_k), mp.make_arc_alr(a_k, b_k)))
    for lo, hi in arcs:
        if lo != hi:
            pieces.append((rg.Arc(lo, hi), mp.identity(CIRCLE, rg.Arc(lo, hi), eps)))
    phi = mp.union_maps(pieces, check_eps=1e-2)
    triples = []
    for (lo, hi), L in zip(arcs, lens):
        if L == 0.0:
            A_k = CompactSetApprox(CIRCLE, [lo], eps)
            triples.append((A_k, mp.constant(CIRCLE, [lo]), IfsSystem(CIRCLE, [mp.identity(CIRCLE)])))
        else:
            region = rg.Arc(lo, hi)
            A_k = CompactSetApprox(CIRCLE, region.net(eps), eps)
            triples.append((A_k, mp.make_retraction(CIRCLE, region), _two_map_arc_system(lo, L)))
    W = build_retract_ifs(triples, eps)
    A = W.target
    F = W.with_maps(phi)
    ex = PiecewiseExample(F, A, phi, gaps)
    if all(L == 0.0 for L in lens):
        shift = _arc_shift(gaps)
        psi = mp.with_label(mp.compose(phi, shift), "phi∘w")
        ex.variants["two_map"] = IfsSystem(CIRCLE, [phi, psi], A)
        ex.variants["w"] = shift
    return ex


def _arc_shift(gaps):
    """Piecewise-linear circle map taking gap k onto gap k+1 (mod m), preserving arc-length ratios."""
    m = len(gaps)
    starts = np.array([g[0] for g in gaps])
    lens = np.array([float(wrap_angle(b - a)) if wrap_angle(b - a) > 0 else TWO_PI for a, b in gaps])

    def fn(P):
        th = P[:, 0]
        out = th.copy()
        for k in range(m):
            u = wrap_angle(th - starts[k])
            inside = u <= lens[k]
            j = (k + 1) % m
            out = np.where(inside, starts[j] + u / lens[k] * lens[j], out)
        return out.reshape(-1, 1)

    return mp.MapHandle(CIRCLE, fn, "w-shift")


def line_example(parts, eps: float = 1e-3, alr_variant: str = "square") -> PiecewiseExample:
    """A = union of >= 2 sorted disjoint closed intervals / points on the real line.

    ``variants['simplified']`` holds the system with phi = phi_1 o clamp[a_1, b_1].
    """
    parts = _parse_parts(parts)
    if len(parts) < 2:
        raise ValueError("need at least two intervals or points")
    for (lo, hi), (lo2, hi2) in zip(parts, parts[1:]):
        if not (lo <= hi < lo2 <= hi2):
            raise ValueError("parts must be sorted, disjoint and non-degenerate in order")
    gaps = [(parts[k][1], parts[k + 1][0]) for k in range(len(parts) - 1)]
    b0, a_m = parts[0][0], parts[-1][1]
    pieces = [(rg.Interval(-math.inf, b0), mp.constant(REAL_LINE, [b0]))]
    for a_k, b_k in gaps:
        pieces.append((rg.Interval(a_k, b_k), mp.make_interval_alr(a_k, b_k, alr_variant)))
    for lo, hi in parts:
        pieces.append((rg.Interval(lo, hi), mp.identity(REAL_LINE, rg.Interval(lo, hi), eps)))
    pieces.append((rg.Interval(a_m, math.inf), mp.constant(REAL_LINE, [a_m])))
    phi = mp.with_label(mp.union_maps(pieces), "phi-line")
    triples = []
    for lo, hi in parts:
        if lo == hi:
            A_k = CompactSetApprox(REAL_LINE, [lo], eps)
            triples.append((A_k, mp.constant(REAL_LINE, [lo]), IfsSystem(REAL_LINE, [mp.identity(REAL_LINE)])))
        else:
            region = rg.Interval(lo, hi)
            A_k = CompactSetApprox(REAL_LINE, region.net(eps), eps)
            Wk = IfsSystem(REAL_LINE, [mp.affine(REAL_LINE, 0.5, lo / 2.0), mp.affine(REAL_LINE, 0.5, hi / 2.0)])
            triples.append((A_k, mp.make_retraction(REAL_LINE, region), Wk))
    samples = np.linspace(parts[0][0] - 10.0, parts[-1][1] + 10.0, 2001).reshape(-1, 1)
    W = build_retract_ifs(triples, eps, samples)
    A = W.target
    F = W.with_maps(phi)
    a1, b1 = gaps[0]
    simple = mp.compose(mp.make_interval_alr(a1, b1, alr_variant), mp.make_retraction(REAL_LINE, rg.Interval(a1, b1)))
    simple = mp.MapHandle(REAL_LINE, simple.fn, "phi-simplified",
                          fixed_set=CompactSetApprox(REAL_LINE, [a1, b1], eps),
                          branches=(mp.MonotoneBranch(a1, b1, True),), descriptor=simple.descriptor)
    ex = PiecewiseExample(F, A, phi, gaps)
    ex.variants["simplified"] = W.with_maps(simple)
    ex.variants["phi_simplified"] = simple
    ex.variants["W"] = W
    return ex


def kwietniak_system():
    phi = mp.make_kwietniak_map()
    A = CompactSetApprox(COMPACTIFIED_LINE, [np.inf], 1e-12)
    return IfsSystem(COMPACTIFIED_LINE, [phi], A), A


# ---------------------------------------------------------------------------
# presets by name
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Preset:
    name: str
    F: IfsSystem
    A: CompactSetApprox
    phi: mp.MapHandle
    x0: np.ndarray
    seed_region: object
    gap_system: Optional[GapSystem] = None
    repellor: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.repellor is None and self.phi.repellor_hint is not None:
            self.repellor = self.phi.repellor_hint(self.x0[None, :] if self.x0.ndim == 1 else self.x0)[0]


def _parse_part_list(text):
    parts = json.loads(text)
    return [p if isinstance(p, (list, tuple)) else [p, p] for p in parts]


def preset(name: str, eps: float = 1e-3) -> Preset:
    """Look up a named system.

    Names: ``cantor``, ``cantor-simplified``, ``sierpinski-triangle``,
    ``sierpinski-carpet``, ``kwietniak``, ``line:<json parts>`` and
    ``circle:<json parts>``, where parts is a JSON list of ``[lo, hi]`` pairs
    or single numbers, e.g. ``line:[0,[2,3]]``.
    """
    if name in ("cantor", "cantor-simplified"):
        g = cantor_system(simplified=name.endswith("simplified"))
        return Preset(name, g.W.with_maps(g.phi), g.fractal_ref, g.phi, np.array([0.5]), rg.Interval(0, 1), g)
    if name.startswith("sierpinski"):
        simplified = name.endswith("-simplified")
        base = name.removesuffix("-simplified")
        if base == "sierpinski-carpet":
            g = sierpinski_carpet_system(simplified=simplified)
            region = rg.Box(0, 1, 0, 1)
        elif base == "sierpinski-triangle":
            g = sierpinski_triangle_system(simplified=simplified)
            region = g.D
        else:
            raise KeyError(name)
        return Preset(name, g.W.with_maps(g.phi), g.fractal_ref, g.phi, g.hole_center, region, g)
    if name == "kwietniak":
        F, A = kwietniak_system()
        return Preset(name, F, A, F.maps[0], np.array([-5.0]), rg.Interval(-50.0, 50.0))
    if name.startswith("line:"):
        ex = line_example(_parse_part_list(name[5:]), eps)
        a1, b1 = ex.gaps[0]
        lo, hi = ex.A.points.min(), ex.A.points.max()
        return Preset(name, ex.F, ex.A, ex.phi, np.array([(a1 + b1) / 2]), rg.Interval(lo - 5, hi + 5),
                      repellor=np.array([b1]))
    if name.startswith("circle:"):
        ex = circle_example(_parse_part_list(name[7:]), eps)
        if not ex.gaps:
            return Preset(name, ex.F, ex.A, ex.phi, np.array([0.0]), rg.Arc(0.0, 0.0))
        a, b = ex.gaps[0]
        mid = float(wrap_angle(a + wrap_angle(b - a) / 2)) if a != b else float(wrap_angle(a + math.pi))
        return Preset(name, ex.F, ex.A, ex.phi, np.array([mid]), rg.Arc(0.0, 0.0), repellor=np.array([b]))
    raise KeyError(f"unknown preset {name!r}")


def preset_phi(name: str, simplified: bool = False):
    if name == "cantor":
        return cantor_system(simplified=simplified).phi
    if name == "sierpinski-carpet":
        return sierpinski_carpet_system(simplified=simplified).phi
    if name == "sierpinski-triangle":
        return sierpinski_triangle_system(simplified=simplified).phi
    raise KeyError(name)


PRESET_NAMES = ("cantor", "cantor-simplified", "sierpinski-triangle", "sierpinski-carpet",
                "kwietniak", "line:<parts>", "circle:<parts>")
