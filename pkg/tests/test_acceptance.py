"""Acceptance suite: one test per criterion, at the stated tolerances.

Expected values come from oracles written here independently of the library
(closed forms, brute-force subdivision, ternary endpoints).
"""
import filecmp
import itertools
import math
from pathlib import Path

import numpy as np
import pytest

from ifslab import analysis as an
from ifslab import gallery as g
from ifslab import maps as mp
from ifslab import regions as rg
from ifslab.cli import run_experiment
from ifslab.hutchinson import IfsSystem, iterate_orbit
from ifslab.sets import CompactSetApprox, estimate_li_ls, hausdorff_distance
from ifslab.spaces import REAL_LINE, UNIT_DISC

CONFIGS = sorted((Path(__file__).resolve().parents[1] / "configs").glob("*.json"))


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------

def cantor_endpoints(depth):
    """Endpoints of the 2**depth closed intervals of the depth-th Cantor construction step."""
    ivs = [(0.0, 1.0)]
    for _ in range(depth):
        ivs = [iv for lo, hi in ivs for iv in ((lo, lo + (hi - lo) / 3), (hi - (hi - lo) / 3, hi))]
    return np.array([e for iv in ivs for e in iv])


def cantor_distance(x, depth=20):
    """d(x, Cantor) by descending into the construction intervals (exact up to 3**-depth)."""
    best = math.inf
    stack = [(0.0, 1.0, 0)]
    while stack:
        lo, hi, k = stack.pop()
        lower = max(lo - x, 0.0, x - hi)
        if lower >= best:
            continue
        best = min(best, abs(x - lo), abs(x - hi))
        if k < depth:
            L = (hi - lo) / 3
            stack += [(lo, lo + L, k + 1), (hi - L, hi, k + 1)]
    return best


def carpet_distance(p, depth=10):
    """Branch-and-bound nearest carpet point: cells are subdivided 8-fold, corners are carpet points."""
    p = np.asarray(p, dtype=float)
    best = math.inf
    stack = [(0.0, 0.0, 1.0, 0)]
    while stack:
        x, y, s, k = stack.pop()
        dx = max(x - p[0], 0.0, p[0] - x - s)
        dy = max(y - p[1], 0.0, p[1] - y - s)
        if math.hypot(dx, dy) >= best:
            continue
        for cx, cy in ((x, y), (x + s, y), (x, y + s), (x + s, y + s)):
            best = min(best, math.hypot(p[0] - cx, p[1] - cy))
        if k < depth:
            t = s / 3
            stack += [(x + i * t, y + j * t, t, k + 1) for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    return best


def disc_oracle(z, n):
    """phi^n(z) on the vertical chord: the chord coordinate t in [0, 1] follows t -> t**2."""
    x, y = z
    h = math.sqrt(1 - x * x)
    t = (y + h) / (2 * h)
    return np.array([x, -h + 2 * h * t ** (2 ** n)])


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def test_criterion_1_contraction_sanity():
    eps = 1e-4
    S0 = CompactSetApprox(REAL_LINE, rg.Interval(-2.0, 2.0).net(eps), eps)
    cases = [
        (IfsSystem(REAL_LINE, [mp.affine(REAL_LINE, 0.5, 0.0)], CompactSetApprox(REAL_LINE, [0.0], eps))),
        (IfsSystem(REAL_LINE, [mp.affine(REAL_LINE, 0.5, 0.0), mp.affine(REAL_LINE, 0.5, 0.5)],
                   CompactSetApprox(REAL_LINE, rg.Interval(0.0, 1.0).net(eps), eps))),
    ]
    for F in cases:
        rec = iterate_orbit(F, S0, 30, eps)
        d = np.array(rec.distances_to_target)
        assert d[-1] <= 10 * eps
        # ratio window: below 0.1 and still above the resolution floor
        idx = [n for n in range(1, len(d)) if 10 * eps < d[n - 1] < 0.1]
        assert idx
        ratios = d[idx] / d[np.array(idx) - 1]
        assert np.all((ratios >= 0.45) & (ratios <= 0.55)), ratios


def test_criterion_2_alr_verification():
    rng = np.random.default_rng(2)
    cases = [
        ("square", mp.make_interval_alr(0, 1, "square"), np.linspace(0, 1, 101), 1e-10, 10_000, 1e-2),
        ("sqrt", mp.make_interval_alr(0, 1, "sqrt"), np.linspace(0, 1, 101), 1e-10, 10_000, 1e-2),
        ("arc", mp.make_arc_alr(0.0, math.pi), np.linspace(0, 2 * math.pi, 100, endpoint=False), 1e-10, 10_000, 1e-2),
        ("disc", mp.make_disc_alr(), UNIT_DISC.sample(200, rng), 1e-10, 10_000, 5e-2),
        ("kwietniak", mp.make_kwietniak_map(), np.linspace(-20, 20, 41), 1e-8, 100_000, None),
    ]
    for name, phi, samples, tol, n_max, terminal in cases:
        rep = an.alr_verify(phi, CompactSetApprox(phi.space, samples, 1e-9), n_max=n_max, tol=tol,
                            witness_length=20)
        assert rep.passed, name
        w = rep.witness
        assert len(w) == 20
        assert w.residuals.max() <= 1e-10, name
        if terminal is not None:
            assert w.distances_to_repellor()[-1] <= terminal, name
    # closed-form cross-check of the square witness x_n = x0 ** (2 ** -n)
    phi = mp.make_interval_alr(0, 1, "square")
    w = an.witnessing_sequence(phi, [0.5], [1.0], 20)
    expected = 0.5 ** (2.0 ** -np.arange(20))
    assert np.max(np.abs(w.points[:, 0] - expected)) <= 1e-10


def test_criterion_3_disc_closed_form():
    rng = np.random.default_rng(3)
    phi = mp.make_disc_alr()
    r = np.sqrt(rng.uniform(0, 0.98, 100))
    th = rng.uniform(0, 2 * math.pi, 100)
    Z = np.column_stack([r * np.cos(th), r * np.sin(th)])
    worst = 0.0
    P = Z.copy()
    for n in range(1, 11):
        P = phi.eval(P)
        closed = mp.disc_closed_form(Z, n)
        oracle = np.array([disc_oracle(z, n) for z in Z])
        worst = max(worst, np.abs(P - closed).max(), np.abs(closed - oracle).max())
    assert worst <= 1e-9


@pytest.mark.parametrize("name, eps, n_max, tol, wlen", [
    ("kwietniak", 1e-2, 1000, 1e-2, 100),
    ("line:[0,[2,3]]", 1e-3, 200, 1e-2, 60),
])
def test_criterion_4_strict_refutation(name, eps, n_max, tol, wlen):
    P = g.preset(name, eps)
    w = an.witnessing_sequence(P.phi, P.x0, P.repellor, wlen)
    ref = an.strict_refute(P.F, P.A, w, eps)
    assert ref.refuted
    assert abs(ref.min_margin - ref.x0_distance) <= 3 * eps
    if name == "kwietniak":
        # x0 = -5 sits at angular distance pi - |2 arctan(-5)| from infinity
        assert ref.x0_distance == pytest.approx(math.pi - 2 * math.atan(5.0), abs=1e-12)
    else:
        assert ref.x0_distance == pytest.approx(1.0, abs=eps)
    seeds = np.random.default_rng(4).uniform(P.seed_region.lo, P.seed_region.hi, (50, 1))
    verdicts = [an.pointwise_test(P.F, x[None, :], P.A, n_max, tol, eps).verdict for x in seeds]
    assert verdicts.count("converged") == 50


def _cantor_pipeline(system, commutes):
    eps = 1e-4
    rng = np.random.default_rng(5)
    X = CompactSetApprox(REAL_LINE, rng.uniform(0, 1, 10_000), 1e-9)
    comm = g.commutativity_check(system, X, tol=1e-10)
    if commutes:
        assert comm.passed and comm.max_defect <= 1e-10
    else:
        assert comm.max_defect > 1e-3
    F = system.W.with_maps(system.phi)
    A = system.fractal_ref
    seeds = rng.uniform(0, 1, 50)
    for x in seeds:
        v = an.pointwise_test(F, [x], A, n_max=15, tol=0.02, eps=eps)
        assert v.converged, x
    w = an.witnessing_sequence(system.phi, [0.5], [2.0 / 3.0], 40)
    ref = an.strict_refute(F, A, w, eps)
    d_oracle = cantor_distance(0.5)
    assert d_oracle == pytest.approx(1 / 6, abs=1e-9)
    assert ref.refuted
    assert ref.min_distance >= d_oracle - 3 * eps


def test_criterion_5_cantor_headline():
    system = g.cantor_system()
    words = [u for k in range(4) for u in itertools.product(range(2), repeat=k)]
    for j in range(2):
        rep = g.conjugation_identity_check(system, words, j)
        assert rep.passed, rep.failures
    # the reference net agrees with brute-force construction endpoints
    ref = CompactSetApprox(REAL_LINE, cantor_endpoints(12), 1e-9)
    assert hausdorff_distance(system.fractal_ref, ref) <= 3 ** -12
    _cantor_pipeline(system, commutes=True)


def test_criterion_6_simplified_phi():
    _cantor_pipeline(g.cantor_system(simplified=True), commutes=False)


def test_criterion_7_sierpinski_carpet():
    eps = 1e-2
    system = g.sierpinski_carpet_system()
    assert g.gap_invariance_check(system, 6).passed
    assert g.phi_image_check(system).passed
    F = system.W.with_maps(system.phi)
    A = system.fractal_ref
    rng = np.random.default_rng(7)
    for x in rng.uniform(0, 1, (20, 2)):
        v = an.pointwise_test(F, x[None, :], A, n_max=12, tol=0.05, eps=eps)
        assert v.converged, x
    rep = system.phi.repellor_hint(np.array([[0.5, 0.5]]))[0]
    w = an.witnessing_sequence(system.phi, [0.5, 0.5], rep, 40)
    ref = an.strict_refute(F, A, w, eps)
    d_oracle = carpet_distance((0.5, 0.5), depth=10)
    assert d_oracle == pytest.approx(1 / 6, abs=1e-4)
    assert ref.refuted
    assert ref.min_margin >= d_oracle - 3 * eps


def test_criterion_8_limit_estimators():
    tol = 1e-3
    alt = [CompactSetApprox(REAL_LINE, [float(n % 2)], tol) for n in range(10)]
    est = estimate_li_ls(alt, 6, tol)
    assert est.li_points.is_empty
    assert sorted(est.ls_points.points[:, 0].tolist()) == [0.0, 1.0]

    def orbit(fn):
        return [CompactSetApprox(REAL_LINE, fn(n), tol) for n in range(60, 80)]

    triples = [
        (lambda n: [0.0, 1.0], lambda n: [0.0, 1.0, 1 / n ** 2], lambda n: [0.0, 1.0, 1 / n ** 2, 1 - 1 / n ** 2]),
        (lambda n: [0.5], lambda n: [0.5, 0.5 + 1e-4 / n], lambda n: [0.5 - 2e-4 / n, 0.5, 0.5 + 2e-4 / n]),
        (lambda n: [0.0], lambda n: np.linspace(0, 1e-4 / n, 3), lambda n: np.linspace(0, 2e-4 / n, 5)),
    ]
    for fa, fb, fc in triples:
        la, lb, lc = (estimate_li_ls(orbit(f), 10, tol).ls_points for f in (fa, fb, fc))
        assert hausdorff_distance(la, lc) <= tol
        assert hausdorff_distance(la, lb) <= 2 * tol
        assert hausdorff_distance(lb, lc) <= 2 * tol


def test_criterion_9_determinism(tmp_path):
    assert len(CONFIGS) >= 10
    for cfg in CONFIGS:
        dirs = []
        codes = set()
        for threads in (1, 4):
            out = tmp_path / f"{cfg.stem}-t{threads}"
            codes.add(run_experiment(cfg, out, threads))
            dirs.append(out)
        assert len(codes) == 1, cfg.name
        csvs = sorted(p.relative_to(dirs[0]) for p in dirs[0].rglob("*.csv"))
        assert csvs, cfg.name
        for rel in csvs:
            assert filecmp.cmp(dirs[0] / rel, dirs[1] / rel, shallow=False), f"{cfg.name}: {rel}"
