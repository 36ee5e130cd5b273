import numpy as np
import pytest

from ifslab import maps as mp
from ifslab import regions as rg
from ifslab.hutchinson import IfsSystem, apply_operator, fixed_set_check, iterate_orbit
from ifslab.sets import CompactSetApprox, as_set, hausdorff_distance, nearest_distances
from ifslab.spaces import CIRCLE, PLANE, REAL_LINE, SpaceMismatchError

half = mp.affine(REAL_LINE, 0.5, 0.0)
half_shift = mp.affine(REAL_LINE, 0.5, 0.5)
third = mp.affine(REAL_LINE, 1 / 3, 0.0)
third_shift = mp.affine(REAL_LINE, 1 / 3, 2 / 3)


def cantor_endpoints(k):
    ivs = [(0.0, 1.0)]
    for _ in range(k):
        ivs = [iv for lo, hi in ivs for iv in ((lo, lo + (hi - lo) / 3), (hi - (hi - lo) / 3, hi))]
    return np.array([e for iv in ivs for e in iv])


def test_apply_operator_examples():
    F = IfsSystem(REAL_LINE, [half])
    assert apply_operator(F, as_set(REAL_LINE, [1.0]), 1e-6).points[:, 0].tolist() == [0.5]
    G = IfsSystem(REAL_LINE, [half, half_shift])
    out = apply_operator(G, as_set(REAL_LINE, [0.0, 1.0]), 1e-6)
    assert sorted(out.points[:, 0].tolist()) == [0.0, 0.5, 1.0]
    C = IfsSystem(REAL_LINE, [third, third_shift])
    out = apply_operator(C, as_set(REAL_LINE, [0.0]), 1e-6)
    assert out.points[:, 0] == pytest.approx([0.0, 2 / 3])


def test_apply_operator_errors():
    F = IfsSystem(REAL_LINE, [half])
    with pytest.raises(SpaceMismatchError):
        apply_operator(F, as_set(CIRCLE, [0.0]), 1e-3)
    with pytest.raises(ValueError):
        IfsSystem(REAL_LINE, [])
    with pytest.raises(SpaceMismatchError):
        IfsSystem(REAL_LINE, [mp.rotation(0.1)])


def test_iterate_orbit_geometric_decay():
    F = IfsSystem(REAL_LINE, [half], as_set(REAL_LINE, [0.0]))
    rec = iterate_orbit(F, as_set(REAL_LINE, [1.0], 1e-9), 10, 1e-9)
    assert len(rec.steps) == 11 and len(rec.distances_to_target) == 11
    assert rec.final.points[0, 0] == 2 ** -10
    assert rec.distances_to_target[-1] == pytest.approx(9.765625e-4)


def test_iterate_identity():
    F = IfsSystem(PLANE, [mp.identity(PLANE)])
    S0 = as_set(PLANE, [[0.0, 1.0], [2.0, 3.0]])
    rec = iterate_orbit(F, S0, 4, 1e-3)
    for S in rec.steps:
        assert np.array_equal(S.points, S0.points)


def test_iterate_cantor_from_interval_net():
    eps = 1e-4
    ref = CompactSetApprox(REAL_LINE, cantor_endpoints(14), 1e-9)
    F = IfsSystem(REAL_LINE, [third, third_shift], ref)
    S0 = CompactSetApprox(REAL_LINE, rg.Interval(0, 1).net(eps), eps)
    rec = iterate_orbit(F, S0, 8, eps)
    assert rec.distances_to_target[-1] <= 3 ** -8 / 2 + 2e-4


def test_truncation_flag():
    F = IfsSystem(REAL_LINE, [half, half_shift])
    S0 = CompactSetApprox(REAL_LINE, np.linspace(0, 1, 50), 1e-12)
    rec = iterate_orbit(F, S0, 20, 1e-12, point_cap=1000)
    assert rec.truncated and len(rec.steps) < 21


def test_fixed_set_check():
    ref = CompactSetApprox(REAL_LINE, cantor_endpoints(12), 1e-6)
    assert fixed_set_check(IfsSystem(REAL_LINE, [third, third_shift]), ref, 1e-6).is_fixed
    rep = fixed_set_check(IfsSystem(REAL_LINE, [half]), as_set(REAL_LINE, [1.0]), 1e-3)
    assert rep.defect == 0.5 and not rep.is_fixed


def test_contraction_systems_monotone():
    eps = 1e-2
    rng = np.random.default_rng(0)
    square = IfsSystem(PLANE, [mp.affine(PLANE, 0.5, [i / 2, j / 2]) for i in (0, 1) for j in (0, 1)],
                       CompactSetApprox(PLANE, rg.Box(0, 1, 0, 1).net(eps), eps))
    line = IfsSystem(REAL_LINE, [half, half_shift], CompactSetApprox(REAL_LINE, rg.Interval(0, 1).net(eps), eps))
    for F, dim in ((line, 1), (square, 2)):
        for _ in range(3):
            seed = rng.uniform(-2, 2, (1, dim))
            rec = iterate_orbit(F, CompactSetApprox(F.space, seed, eps), 25, eps)
            d = np.array(rec.distances_to_target)
            assert np.all(np.diff(d[1:]) <= eps)
            assert d.min() <= 10 * eps


def test_monotonicity_and_union_rule():
    eps = 1e-3
    F = IfsSystem(REAL_LINE, [third, third_shift, mp.make_interval_alr(1 / 3, 2 / 3)])
    rng = np.random.default_rng(1)
    T = CompactSetApprox(REAL_LINE, rng.uniform(0, 1, 400), eps)
    S = CompactSetApprox(REAL_LINE, T.points[:150], eps)
    FS, FT = apply_operator(F, S, eps), apply_operator(F, T, eps)
    assert nearest_distances(REAL_LINE, FS.points, FT.points).max() <= eps
    U = CompactSetApprox(REAL_LINE, rng.uniform(2, 3, 100), eps)
    joint = apply_operator(F, T.union(U), eps)
    separate = apply_operator(F, T, eps).union(apply_operator(F, U, eps))
    assert hausdorff_distance(joint, separate) <= eps


def test_threads_do_not_change_result():
    F = IfsSystem(PLANE, [mp.affine(PLANE, 0.5, [i / 2, j / 2]) for i in (0, 1) for j in (0, 1)])
    S = CompactSetApprox(PLANE, np.random.default_rng(2).uniform(size=(5000, 2)), 1e-4)
    a = apply_operator(F, S, 1e-4, threads=1)
    b = apply_operator(F, S, 1e-4, threads=4)
    assert np.array_equal(a.points, b.points)
