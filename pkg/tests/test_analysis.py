import math

import numpy as np
import pytest

from ifslab import analysis as an
from ifslab import maps as mp
from ifslab import regions as rg
from ifslab.hutchinson import IfsSystem, apply_operator, fixed_set_check
from ifslab.sets import CompactSetApprox, as_set
from ifslab.spaces import CIRCLE, COMPACTIFIED_LINE, REAL_LINE

square = mp.make_interval_alr(0, 1, "square")


def test_alr_verify_square():
    rep = an.alr_verify(square, as_set(REAL_LINE, np.linspace(0, 1, 100)))
    assert rep.attracting and rep.passed
    assert set(np.round(rep.limits[:, 0], 6)) <= {0.0, 1.0}
    w = rep.witness
    assert 0 < w.points[0, 0] < 1 and w.repellor[0] == 1.0
    assert w.points[1, 0] == pytest.approx(math.sqrt(w.points[0, 0]), abs=1e-12)


def test_alr_verify_identity():
    rep = an.alr_verify(mp.identity(REAL_LINE), as_set(REAL_LINE, np.linspace(0, 1, 20)))
    assert rep.attracting and not rep.has_repellor and not rep.passed


def test_alr_verify_kwietniak():
    rep = an.alr_verify(mp.make_kwietniak_map(), as_set(COMPACTIFIED_LINE, [-5.0, 0.0, 3.0]),
                        n_max=100_000, tol=1e-8)
    assert rep.attracting and rep.passed
    inf = np.full_like(rep.limits, np.inf)
    assert COMPACTIFIED_LINE.distance(rep.limits, inf).max() <= 1e-3


def test_alr_verify_needs_branches():
    bare = mp.MapHandle(REAL_LINE, lambda P: P ** 2, "bare")
    with pytest.raises(an.WitnessError, match="lacks monotone branches"):
        an.alr_verify(bare, as_set(REAL_LINE, np.linspace(0, 1, 10)))


def test_witness_square():
    w = an.witnessing_sequence(square, [0.5], [1.0], 13)
    assert w.points[12, 0] == pytest.approx(0.5 ** (2.0 ** -12), abs=1e-12)
    assert w.points[12, 0] == pytest.approx(0.99983, abs=1e-5)
    assert w.residuals.max() <= 1e-12


def test_witness_sqrt_and_kwietniak_and_disc():
    w = an.witnessing_sequence(mp.make_interval_alr(0, 1, "sqrt"), [0.5], [0.0], 6)
    assert w.points[:, 0] == pytest.approx(0.5 ** (2.0 ** np.arange(6)), abs=1e-12)
    k = an.witnessing_sequence(mp.make_kwietniak_map(), [-5.0], [np.inf], 10)
    assert k.points[:, 0].tolist() == [-5.0 - n for n in range(10)]
    d = mp.make_disc_alr()
    z0 = np.array([0.3, 0.1])
    b = d.repellor_hint(z0[None, :])[0]
    wd = an.witnessing_sequence(d, z0, b, 20)
    assert np.all(wd.points[:, 0] == 0.3)
    assert np.all(np.diff(wd.distances_to_repellor()) < 0)


def test_witness_distances_decrease_after_half_branch():
    w = an.witnessing_sequence(square, [0.1], [1.0], 30)
    d = w.distances_to_repellor()
    start = int(np.argmax(d < 0.5))
    assert np.all(np.diff(d[start:]) < 0)


def test_witness_rejects_fixed_start():
    with pytest.raises(an.WitnessError):
        an.witnessing_sequence(square, [1.0], [1.0], 5)


def _canonical():
    eps = 1e-3
    F = IfsSystem(REAL_LINE, [square, mp.constant(REAL_LINE, [0.0]), mp.constant(REAL_LINE, [1.0])])
    A = as_set(REAL_LINE, [0.0, 1.0], eps)
    return F, A, eps


def test_strict_refute_canonical():
    F, A, eps = _canonical()
    w = an.witnessing_sequence(square, [0.5], [1.0], 40)
    ref = an.strict_refute(F, A, w, eps)
    assert ref.refuted
    assert ref.x0_distance == 0.5
    assert abs(ref.min_margin - 0.5) <= 3 * eps
    # x0 = phi^n(x_n) persists in F^n(K) at every checked step
    assert max(ref.persistence[n - 1] for n in ref.checked_steps) <= eps


def test_strict_refute_kwietniak():
    eps = 1e-2
    phi = mp.make_kwietniak_map()
    F = IfsSystem(COMPACTIFIED_LINE, [phi])
    A = as_set(COMPACTIFIED_LINE, [np.inf], 1e-9)
    w = an.witnessing_sequence(phi, [-5.0], [np.inf], 100)
    assert an.strict_refute(F, A, w, eps).refuted


def test_strict_refute_preconditions():
    F, A, eps = _canonical()
    w = an.witnessing_sequence(square, [0.5], [1.0], 40)
    with pytest.raises(an.PreconditionError):
        an.strict_refute(F, A, w, eps, tail_start=60)
    short = an.witnessing_sequence(square, [0.5], [1.0], 3)
    with pytest.raises(an.PreconditionError, match="larger n0"):
        an.strict_refute(F, A, short, eps)
    other = IfsSystem(REAL_LINE, [mp.constant(REAL_LINE, [0.0])])
    with pytest.raises(an.PreconditionError):
        an.strict_refute(other, A, w, eps)


def test_pointwise_examples():
    F = IfsSystem(REAL_LINE, [mp.affine(REAL_LINE, 0.5, 0.0)])
    v = an.pointwise_test(F, [1.0], as_set(REAL_LINE, [0.0]), 60, 1e-3, 1e-6)
    assert v.converged
    G = IfsSystem(REAL_LINE, [mp.translation(REAL_LINE, 1.0)])
    v = an.pointwise_test(G, [0.0], as_set(REAL_LINE, [0.0]), 30, 1e-3, 1e-6)
    assert v.verdict == "diverged"


def test_pointwise_inconclusive_and_deterministic():
    F = IfsSystem(REAL_LINE, [mp.affine(REAL_LINE, 0.5, 0.0)])
    v1 = an.pointwise_test(F, [1.0], as_set(REAL_LINE, [0.0]), 3, 1e-6, 1e-9)
    v2 = an.pointwise_test(F, [1.0], as_set(REAL_LINE, [0.0]), 3, 1e-6, 1e-9)
    assert v1.verdict == "inconclusive" and v1.distances == v2.distances


def test_squeeze_check():
    W = IfsSystem(REAL_LINE, [mp.make_retraction(REAL_LINE, rg.PointList(((0.0,), (1.0,))))])
    assert an.squeeze_check(W, square, [0.5], 20, 1e-9).holds
    Wid = IfsSystem(REAL_LINE, [mp.affine(REAL_LINE, 0.5, 0.0)])
    assert an.squeeze_check(Wid, mp.identity(REAL_LINE), [0.3], 10, 1e-9).holds
    with pytest.raises(an.PreconditionError):
        an.squeeze_check(Wid, square, [0.5], 5, 1e-9)


def test_build_retract_ifs_examples():
    eps = 1e-3
    zero = as_set(REAL_LINE, [0.0], eps)
    F = an.build_retract_ifs([(zero, mp.constant(REAL_LINE, [0.0]), IfsSystem(REAL_LINE, [mp.identity(REAL_LINE)]))])
    assert len(F.maps) == 1
    assert apply_operator(F, as_set(REAL_LINE, [5.0, -2.0]), eps).points[:, 0].tolist() == [0.0]
    one = as_set(REAL_LINE, [1.0], eps)
    G = an.build_retract_ifs([
        (zero, mp.constant(REAL_LINE, [0.0]), IfsSystem(REAL_LINE, [mp.identity(REAL_LINE)])),
        (one, mp.constant(REAL_LINE, [1.0]), IfsSystem(REAL_LINE, [mp.identity(REAL_LINE)])),
    ])
    S = as_set(REAL_LINE, [0.37], eps)
    for _ in range(3):
        S = apply_operator(G, S, eps)
        assert sorted(S.points[:, 0].tolist()) == [0.0, 1.0]
    with pytest.raises(an.PreconditionError):
        an.build_retract_ifs([(zero, mp.identity(REAL_LINE), IfsSystem(REAL_LINE, [mp.identity(REAL_LINE)]))])


def test_build_retract_ifs_two_arcs():
    eps = 1e-3
    parts = []
    for lo, hi in ((0.0, 1.0), (2.0, 4.0)):
        arc = rg.Arc(lo, hi)
        L = hi - lo
        W = IfsSystem(CIRCLE, [mp.MapHandle(CIRCLE, (lambda P, lo=lo, s=s: lo + s + (P - lo) % (2 * math.pi) / 2))
                               for s in (0.0, L / 2)])
        parts.append((CompactSetApprox(CIRCLE, arc.net(eps), eps), mp.make_retraction(CIRCLE, arc), W))
    F = an.build_retract_ifs(parts, eps)
    assert fixed_set_check(F, F.target, eps).is_fixed


def test_corollary_composite():
    """ALR map + retraction system: squeeze holds, pointwise converges, strict is refuted."""
    eps = 1e-3
    assert an.alr_verify(square, as_set(REAL_LINE, np.linspace(0, 1, 50))).passed
    parts = [(as_set(REAL_LINE, [p], eps), mp.constant(REAL_LINE, [p]), IfsSystem(REAL_LINE, [mp.identity(REAL_LINE)]))
             for p in (0.0, 1.0)]
    W = an.build_retract_ifs(parts, eps)
    assert an.squeeze_check(W, square, [0.5], 20, eps).holds
    F = W.with_maps(square)
    # square ALR is the identity off [0, 1], so seeds are drawn from the interval
    seeds = np.random.default_rng(3).uniform(0, 1, 100)
    assert all(an.pointwise_test(F, [x], W.target, 50, 1e-2, eps).converged for x in seeds)
    w = an.witnessing_sequence(square, [0.5], [1.0], 40)
    assert an.strict_refute(F, W.target, w, eps).refuted


def test_classify_report():
    F, A, eps = _canonical()
    w = an.witnessing_sequence(square, [0.5], [1.0], 40)
    rep = an.classify("canonical", F, A, [[0.2], [0.9]], w, 50, 1e-2, eps)
    d = rep.to_dict()
    assert d["verdicts"] == {"pointwise": "converged", "strict_refuted": True}
    assert d["evidence"]["strict"]["x0_distance"] == 0.5
    assert len(rep.runs) == 2
