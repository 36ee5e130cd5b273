"""Attractor classification: ALR checks, witnessing sequences, pointwise and strict tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .hutchinson import IfsSystem, apply_operator, iterate_orbit
from .maps import MapHandle, PreimageError, compose, preimage_on_branch
from .sets import CompactSetApprox, dedup_points, estimate_li_ls, hausdorff_distance, nearest_distances
from .spaces import SpaceMismatchError


class WitnessError(ValueError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class PreconditionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# witnessing sequences
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class WitnessingSequence:
    map: MapHandle
    points: np.ndarray
    repellor: np.ndarray
    residuals: np.ndarray
    tol: float
    converged: bool = True

    def __len__(self):
        return len(self.points)

    def distances_to_repellor(self) -> np.ndarray:
        return self.map.space.distance(self.points, self.repellor[None, :])


def _branch_between(phi, p, q):
    for br in phi.branches:
        tp, tq = br.param(p[None, :])[0], br.param(q[None, :])[0]
        if br.contains_param(tp) and br.contains_param(tq):
            return br, tp, tq
    return None, None, None


def witnessing_sequence(phi: MapHandle, x0, repellor, length: int, tol: float = 1e-12,
                        radius: float = 1e-2) -> WitnessingSequence:
    """Backward orbit x0, x1, ... with phi(x_{n+1}) = x_n, heading for ``repellor``.

    Preimages come from bisection on the monotone branch joining x0 and the
    repellor (searching only between the current point and the repellor), or
    from the map's explicit inverse.
    """
    space = phi.space
    x0 = space.normalize(x0)[0]
    rep = space.normalize(repellor)[0]
    if space.distance(phi.eval(x0[None, :]), x0[None, :])[0] <= tol:
        raise WitnessError("x0 is a fixed point of the map")
    br, t0, trep = _branch_between(phi, x0, rep)
    if br is None and phi.inverse is None:
        raise WitnessError("map lacks monotone branches")
    pts = [x0]
    res = []
    for k in range(length - 1):
        y = pts[-1]
        if br is not None:
            ty = br.param(y[None, :])[0]
            lo, hi = (ty, trep) if ty <= trep else (trep, ty)
            try:
                x = preimage_on_branch(phi, y, br, tol, lo, hi)
            except PreimageError as exc:
                raise WitnessError(f"preimage failed at step {k + 1}: {exc}", np.array(pts)) from exc
        else:
            x = phi.apply_inverse(y[None, :])[0]
        res.append(float(space.distance(phi.eval(x[None, :]), y[None, :])[0]))
        pts.append(x)
    pts = np.array(pts)
    res = np.array(res)
    if res.size and res.max() > max(tol, 1e-12) * 10:
        raise WitnessError(f"residual {res.max():.3g} above tolerance", pts)
    seq = WitnessingSequence(phi, pts, rep, res, tol)
    seq.converged = bool(seq.distances_to_repellor()[-1] <= radius)
    return seq


# ---------------------------------------------------------------------------
# ALR verification
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class ALRReport:
    attracting: bool
    limits: np.ndarray
    unconverged: int
    has_repellor: bool
    witness: Optional[WitnessingSequence] = None
    iterations: int = 0

    @property
    def passed(self) -> bool:
        return self.attracting and self.has_repellor


def _repellor_candidates(phi, x0, tol):
    if phi.repellor_hint is not None:
        return [phi.repellor_hint(x0[None, :])[0]]
    cands = []
    for br in phi.branches:
        if br.contains_param(br.param(x0[None, :])[0]):
            for t in (br.lo, br.hi):
                p = br.point(t)
                if phi.space.distance(phi.eval(p), p)[0] <= tol:
                    cands.append(p[0])
    if not cands and phi.fixed_set is not None:
        d = nearest_distances(phi.space, phi.fixed_set.points, x0[None, :])
        cands = [phi.fixed_set.points[i] for i in np.argsort(d, kind="stable")[:8]]
    return cands


def alr_verify(phi: MapHandle, samples: CompactSetApprox, n_max: int = 10_000, tol: float = 1e-10,
               witness_length: int = 20, find_repellor: bool = True) -> ALRReport:
    """Numerically check that phi is attracting and has a local repellor."""
    space = phi.space
    if samples.is_empty:
        raise ValueError("no samples")
    P = samples.points.copy()
    active = np.ones(len(P), dtype=bool)
    limits = P.copy()
    it = 0
    for it in range(1, n_max + 1):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        Q = phi.eval(P[idx])
        step = space.distance(Q, P[idx])
        P[idx] = Q
        done = step < tol
        limits[idx[done]] = Q[done]
        active[idx[done]] = False
    fixed_ok = space.distance(phi.eval(limits), limits) <= tol
    attracting = bool(not active.any() and fixed_ok.all())
    report = ALRReport(attracting, limits, int(active.sum()), False, None, it)
    if not find_repellor:
        return report
    if not phi.branches and phi.inverse is None:
        raise WitnessError("map lacks monotone branches")
    disp = space.distance(phi.eval(samples.points), samples.points)
    moved = np.flatnonzero(disp > tol)
    if moved.size == 0:
        return report
    x0 = samples.points[moved[np.argmax(disp[moved])]]
    for rep in _repellor_candidates(phi, x0, max(tol, 1e-9)):
        try:
            w = witnessing_sequence(phi, x0, rep, witness_length, min(tol, 1e-12))
        except WitnessError:
            continue
        d = w.distances_to_repellor()
        if d[-1] < d[0] and np.all(np.diff(d[len(d) // 2:]) <= 0):
            report.has_repellor = True
            report.witness = w
            break
    return report


# ---------------------------------------------------------------------------
# strict-attractor refutation
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class StrictRefutation:
    refuted: bool
    x0_distance: float
    min_distance: float
    min_margin: float
    max_persistence: float
    tail_start: int
    checked_steps: list
    distances: list
    margins: list
    persistence: list
    K: CompactSetApprox = None


def _agrees_with_some_map(F, phi, pts, tol=1e-9):
    for m in F.maps:
        if np.all(F.space.distance(m.eval(pts), phi.eval(pts)) <= tol):
            return True
    return False


def strict_refute(F: IfsSystem, A: CompactSetApprox, witness: WitnessingSequence, eps: float,
                  tail_start: Optional[int] = None, n_max: Optional[int] = None,
                  threads: int = 1) -> StrictRefutation:
    """Show numerically that A is not a strict attractor of F.

    K = {repellor} + witness tail from ``tail_start``.  For each n at which
    x_n survives in the resolution-eps version of K, phi^n(x_n) = x0 must sit in
    F^n(K), keeping F^n(K) at Hausdorff distance about d(x0, A) from A.
    ``n_max`` defaults to the deepest tail index still resolvable at ``eps``.
    """
    space = F.space
    if A.space != space:
        raise SpaceMismatchError("A and F on different spaces")
    pts = witness.points
    if not _agrees_with_some_map(F, witness.map, np.vstack([pts, A.points[:200]])):
        raise PreconditionError("witness map is not a member of the system")
    rep = witness.repellor
    slack = eps + A.resolution
    if nearest_distances(space, rep[None, :], A.points)[0] > slack:
        raise PreconditionError("repellor not within eps of A")
    x0 = pts[0]
    x0_dist = float(nearest_distances(space, x0[None, :], A.points)[0])
    if x0_dist <= 3 * eps:
        raise PreconditionError("x0 must lie farther than 3*eps from A")
    d_rep = space.distance(pts, rep[None, :])
    if tail_start is None:
        close = np.flatnonzero(d_rep < 10 * eps)
        if close.size == 0:
            raise PreconditionError("choose larger n0: witness never enters the 10*eps neighbourhood")
        tail_start = int(close[0])
    if tail_start >= len(pts):
        raise PreconditionError(f"witness of length {len(pts)} shorter than tail start {tail_start}")
    if np.any(d_rep[tail_start:] >= 10 * eps):
        raise PreconditionError("choose larger n0: witness tail leaves the neighbourhood of A")
    cand = np.vstack([rep[None, :], pts[tail_start:]])
    kept = dedup_points(space, cand, eps)
    # indices n whose x_n survived the thinning of K
    kept_idx = [tail_start + i - 1 for i in range(1, len(cand))
                if np.any(np.all(kept == cand[i], axis=1))]
    if n_max is None:
        n_max = max(kept_idx) if kept_idx else tail_start
    K = CompactSetApprox(space, kept, eps)
    dists, margins, persist = [], [], []
    S = K
    for n in range(1, n_max + 1):
        S = apply_operator(F, S, eps, threads)
        dists.append(hausdorff_distance(S, A))
        dx = space.distance(S.points, x0[None, :])
        p = S.points[np.argmin(dx)]
        persist.append(float(dx.min()))
        margins.append(float(nearest_distances(space, p[None, :], A.points)[0]))
    checked = [n for n in kept_idx if tail_start <= n <= n_max and n >= 1]
    if not checked:
        raise PreconditionError("no resolvable witness index in [tail_start, n_max]; refine eps")
    d_chk = [dists[n - 1] for n in checked]
    m_chk = [margins[n - 1] for n in checked]
    refuted = all(d >= x0_dist - 3 * eps for d in d_chk)
    return StrictRefutation(refuted, x0_dist, float(min(d_chk)), float(min(m_chk)),
                            float(max(persist[n - 1] for n in checked)), tail_start, checked,
                            dists, margins, persist, K)


# ---------------------------------------------------------------------------
# pointwise basin test
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class PointwiseVerdict:
    verdict: str
    distances: list
    converged_at: Optional[int] = None
    point_counts: list = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.verdict == "converged"


def pointwise_test(F: IfsSystem, x, A: CompactSetApprox, n_max: int, tol: float, eps: float,
                   persistence: int = 5, point_cap: int = 2_000_000, threads: int = 1) -> PointwiseVerdict:
    """Iterate F^n({x}) and classify convergence to A in the Hausdorff metric.

    converged: the distance drops below ``tol`` and stays there ``persistence``
    consecutive steps.  diverged: otherwise, when the distance has grown past
    twice its running minimum, or when the upper-limit estimate of the tail keeps
    points away from A while distances stop decreasing.  Anything else is
    inconclusive.
    """
    space = F.space
    S = CompactSetApprox(space, space.normalize(x), eps)
    dists = [hausdorff_distance(S, A)]
    tail = [S]
    counts = [len(S)]
    run = 1 if dists[0] < tol else 0
    for n in range(1, n_max + 1):
        if len(S) * len(F.maps) > point_cap:
            break
        S = apply_operator(F, S, eps, threads)
        d = hausdorff_distance(S, A)
        dists.append(d)
        counts.append(len(S))
        tail = (tail + [S])[-persistence:]
        run = run + 1 if d < tol else 0
        if run >= persistence:
            return PointwiseVerdict("converged", dists, n - persistence + 1, counts)
    running_min = min(dists)
    if dists[-1] > max(2 * running_min, tol):
        return PointwiseVerdict("diverged", dists, None, counts)
    if len(tail) >= 2:
        est = estimate_li_ls(tail, len(tail), max(tol, eps))
        recent = np.array(dists[-len(tail):])
        if not est.ls_points.is_empty:
            far = nearest_distances(space, est.ls_points.points, A.points).max()
            if far > tol + 3 * eps and not np.all(np.diff(recent) < 0):
                return PointwiseVerdict("diverged", dists, None, counts)
    return PointwiseVerdict("inconclusive", dists, None, counts)


# ---------------------------------------------------------------------------
# squeezing and retraction systems
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class SqueezeReport:
    holds: bool
    first_violation: Optional[tuple] = None
    steps: int = 0


def _sample_space(space, samples, n=1000):
    if samples is not None:
        return space.normalize(samples)
    return space.sample(n, np.random.default_rng(0))


def squeeze_check(W: IfsSystem, phi: MapHandle, x, n_max: int, eps: float, samples=None) -> SqueezeReport:
    """Check W^n(x) ⊆ F^n(x) ⊆ Fix(phi) ∪ {phi^n(x)} for F = W ∪ {phi}, within eps."""
    space = W.space
    X = _sample_space(space, samples)
    for w in W.maps:
        img = w.eval(X)
        bad = space.distance(phi.eval(img), img) > eps
        if bad.any():
            k = int(np.argmax(bad))
            raise PreconditionError(f"W(X) not inside Fix(phi): sample {X[k].tolist()} under {w.label}")
    F = W.with_maps(phi)
    SW = SF = CompactSetApprox(space, space.normalize(x), eps)
    orbit_pt = space.normalize(x)
    for n in range(1, n_max + 1):
        SW = apply_operator(W, SW, eps)
        SF = apply_operator(F, SF, eps)
        orbit_pt = phi.eval(orbit_pt)
        if nearest_distances(space, SW.points, SF.points).max() > eps:
            return SqueezeReport(False, (n, "W^n(x) not inside F^n(x)"), n)
        moved = space.distance(phi.eval(SF.points), SF.points) > eps
        off = space.distance(SF.points, orbit_pt) > eps
        if np.any(moved & off):
            return SqueezeReport(False, (n, "F^n(x) leaves Fix(phi) ∪ {phi^n(x)}"), n)
    return SqueezeReport(True, None, n_max)


def build_retract_ifs(parts, eps: float = 1e-3, samples=None) -> IfsSystem:
    """System {w ∘ r_k : w in W_k} from (A_k, r_k, W_k) triples; its image of the space is ∪ A_k."""
    parts = list(parts)
    if not parts:
        raise ValueError("no parts")
    space = parts[0][0].space
    X = _sample_space(space, samples)
    maps = []
    for A_k, r_k, W_k in parts:
        if A_k.space != space or r_k.space != space or W_k.space != space:
            raise SpaceMismatchError("parts live on different spaces")
        for w in W_k.maps:
            if nearest_distances(space, w.eval(A_k.points), A_k.points).max() > eps + A_k.resolution:
                raise PreconditionError(f"{w.label} does not map A_k into itself")
        R = r_k.eval(X)
        if np.any(space.distance(r_k.eval(R), R) > 1e-12):
            raise PreconditionError(f"{r_k.label} is not idempotent")
        maps.extend(compose(w, r_k) for w in W_k.maps)
    target_pts = np.vstack([A_k.points for A_k, _, _ in parts])
    target = CompactSetApprox(space, dedup_points(space, target_pts, eps), eps)
    F = IfsSystem(space, maps, target)
    img = np.vstack([m.eval(X) for m in maps])
    tol = eps + max(A_k.resolution for A_k, _, _ in parts)
    if nearest_distances(space, img, target_pts).max() > tol:
        raise PreconditionError("sampled image of the space escapes the union of the parts")
    return F


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class ClassificationReport:
    subject: str
    pointwise: str
    strict_refuted: bool
    evidence: dict = field(default_factory=dict)
    runs: list = field(default_factory=list, repr=False)
    strict: Optional[StrictRefutation] = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {"subject": self.subject,
                "verdicts": {"pointwise": self.pointwise, "strict_refuted": self.strict_refuted},
                "evidence": self.evidence}


def classify(label: str, F: IfsSystem, A: CompactSetApprox, seeds, witness: Optional[WitnessingSequence],
             n_max: int, tol: float, eps: float, threads: int = 1) -> ClassificationReport:
    verdicts = [pointwise_test(F, s, A, n_max, tol, eps, threads=threads) for s in seeds]
    if all(v.verdict == "converged" for v in verdicts):
        pw = "converged"
    elif any(v.verdict == "diverged" for v in verdicts):
        pw = "diverged"
    else:
        pw = "inconclusive"
    evidence = {
        "seeds": [np.atleast_1d(np.asarray(s, dtype=float)).tolist() for s in seeds],
        "seed_verdicts": [v.verdict for v in verdicts],
        "converged_at": [v.converged_at for v in verdicts],
    }
    refuted = False
    ref = None
    if witness is not None:
        ref = strict_refute(F, A, witness, eps, threads=threads)
        refuted = ref.refuted
        if refuted and ref.x0_distance <= 3 * eps:
            refuted = False
        evidence["strict"] = {
            "x0": witness.points[0].tolist(), "x0_distance": ref.x0_distance,
            "min_distance": ref.min_distance, "min_margin": ref.min_margin,
            "tail_start": ref.tail_start, "checked_steps": ref.checked_steps,
            "witness_max_residual": float(witness.residuals.max()) if witness.residuals.size else 0.0,
        }
    return ClassificationReport(label, pw, refuted, evidence, verdicts, ref)
