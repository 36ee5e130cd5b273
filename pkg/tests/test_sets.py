import math

import numpy as np
import pytest

from ifslab import regions as rg
from ifslab.sets import (CompactSetApprox, EmptySetError, as_set, dedup_points, epsilon_net, estimate_li_ls,
                         grid_snap, hausdorff_distance, nearest_distances)
from ifslab.spaces import (CIRCLE, COMPACTIFIED_LINE, PLANE, REAL_LINE, UNIT_DISC, SpaceMismatchError,
                           space_from_name)


def cantor_level_intervals(k):
    ivs = [(0.0, 1.0)]
    for _ in range(k):
        ivs = [iv for lo, hi in ivs for iv in ((lo, lo + (hi - lo) / 3), (hi - (hi - lo) / 3, hi))]
    return ivs


# -- spaces ---------------------------------------------------------------

def test_metrics_basic():
    assert REAL_LINE.distance([[0.0]], [[3.0]])[0] == 3.0
    assert CIRCLE.distance([[0.1]], [[2 * math.pi - 0.1]])[0] == pytest.approx(0.2)
    assert PLANE.distance([[0.0, 0.0]], [[3.0, 4.0]])[0] == 5.0
    # x -> 2 arctan x; infinity sits at angle pi
    assert COMPACTIFIED_LINE.distance([[1.0]], [[np.inf]])[0] == pytest.approx(math.pi - 2 * math.atan(1.0))
    assert COMPACTIFIED_LINE.distance([[-1e12]], [[np.inf]])[0] < 1e-11


def test_circle_coordinates_wrap():
    assert CIRCLE.normalize([[-0.5]])[0, 0] == pytest.approx(2 * math.pi - 0.5)
    assert CIRCLE.normalize([[2 * math.pi]])[0, 0] == 0.0


@pytest.mark.parametrize("space", [REAL_LINE, CIRCLE, COMPACTIFIED_LINE, PLANE, UNIT_DISC])
def test_metric_axioms_on_samples(space):
    rng = np.random.default_rng(0)
    X, Y, Z = (space.sample(300, rng) for _ in range(3))
    dxy, dyz, dxz = space.distance(X, Y), space.distance(Y, Z), space.distance(X, Z)
    assert np.all(dxy >= 0)
    assert np.allclose(dxy, space.distance(Y, X), atol=1e-15)
    assert np.all(space.distance(X, X) <= 1e-15)
    assert np.all(dxz <= dxy + dyz + 1e-12)


def test_space_names():
    assert space_from_name("circle") == CIRCLE
    assert space_from_name("RealLine") == REAL_LINE


# -- hausdorff --------------------------------------------------------------

def test_hausdorff_one_sided_sup():
    assert hausdorff_distance(as_set(REAL_LINE, [0.0]), as_set(REAL_LINE, [0.0, 1.0])) == 1.0


def test_hausdorff_identity():
    A = as_set(PLANE, np.random.default_rng(1).uniform(size=(50, 2)))
    assert hausdorff_distance(A, A) == 0.0


def test_hausdorff_cantor_level4_vs_level12():
    eps = 1e-4
    pts = np.concatenate([rg.Interval(lo, hi).net(eps) for lo, hi in cantor_level_intervals(4)])
    A = CompactSetApprox(REAL_LINE, pts, eps)
    B = CompactSetApprox(REAL_LINE, [e for iv in cantor_level_intervals(12) for e in iv], 1e-9)
    d = hausdorff_distance(A, B)
    # the farthest point of a level-4 interval is the centre of its level-5 gap
    assert 3 ** -5 / 2 - 1e-3 <= d <= 3 ** -5 / 2 + 1e-3
    assert d == pytest.approx(3 ** -5 / 2, abs=eps / 2)


def test_hausdorff_errors():
    with pytest.raises(SpaceMismatchError):
        hausdorff_distance(as_set(REAL_LINE, [0.0]), as_set(CIRCLE, [0.0]))
    with pytest.raises(EmptySetError):
        hausdorff_distance(CompactSetApprox.empty(REAL_LINE, 1e-3), as_set(REAL_LINE, [0.0]))
    with pytest.raises(EmptySetError):
        CompactSetApprox(REAL_LINE, np.empty((0, 1)), 1e-3)


@pytest.mark.parametrize("space", [REAL_LINE, CIRCLE, COMPACTIFIED_LINE, PLANE, UNIT_DISC])
def test_tree_and_brute_force_agree(space):
    rng = np.random.default_rng(2)
    P, Q = space.sample(1500, rng), space.sample(900, rng)
    brute = nearest_distances(space, P, Q, "brute")
    tree = nearest_distances(space, P, Q, "tree")
    assert np.max(np.abs(brute - tree)) <= 1e-12


# -- grid_snap / nets ---------------------------------------------------------

def test_grid_snap_merges_near_duplicates():
    S = grid_snap(as_set(REAL_LINE, [0.0, 1e-9, 1.0]), 1e-3)
    assert S.points[:, 0].tolist() == [0.0, 1.0]


def test_grid_snap_singleton():
    S = grid_snap(as_set(PLANE, [[0.3, 0.7]]), 0.5)
    assert S.points.tolist() == [[0.3, 0.7]]


def test_grid_snap_uniform_samples():
    X = np.random.default_rng(3).uniform(0, 1, 10 ** 6)
    S = grid_snap(as_set(REAL_LINE, X), 1e-2)
    assert len(S) <= 201
    net = epsilon_net(REAL_LINE, rg.Interval(0, 1), 1e-3)
    assert hausdorff_distance(S, net) <= 5e-3 + 1e-3


def test_grid_snap_contract():
    rng = np.random.default_rng(4)
    for space in (REAL_LINE, CIRCLE, PLANE, COMPACTIFIED_LINE):
        S = as_set(space, space.sample(3000, rng))
        eps = 0.05
        T = grid_snap(S, eps)
        assert hausdorff_distance(S, T) <= eps / 2
        D = space.pairwise(T.points, T.points) + np.eye(len(T)) * 10
        assert D.min() >= eps / 2 - 1e-12
        again = grid_snap(T, eps)
        assert np.array_equal(again.points, T.points)
    with pytest.raises(ValueError):
        grid_snap(S, 0.0)


def test_grid_snap_merges_infinity():
    pts = dedup_points(COMPACTIFIED_LINE, [[np.inf], [-1e9]], 1e-3)
    assert len(pts) == 1


def test_epsilon_net_examples():
    assert epsilon_net(REAL_LINE, rg.Interval(0, 1), 0.25).points[:, 0].tolist() == [0, 0.25, 0.5, 0.75, 1.0]
    assert len(epsilon_net(CIRCLE, rg.Arc(0.0, math.pi), math.pi / 2)) == 3
    net = epsilon_net(PLANE, rg.DiscRegion(0.0, 0.0, 1.0), 0.5)
    probe = rg.DiscRegion(0.0, 0.0, 1.0).samples(10 ** 4)
    assert nearest_distances(PLANE, probe, net.points).max() <= 0.5
    with pytest.raises(rg.EmptyRegionError):
        epsilon_net(REAL_LINE, rg.PointList(()), 0.1)


# -- Li / Ls ---------------------------------------------------------------------

def _orbit(seq, tol=1e-3):
    return [CompactSetApprox(REAL_LINE, s, tol) for s in seq]


def test_li_ls_constant():
    est = estimate_li_ls(_orbit([[0.0, 1.0]] * 5), 5, 1e-3)
    assert sorted(est.li_points.points[:, 0]) == [0.0, 1.0]
    assert sorted(est.ls_points.points[:, 0]) == [0.0, 1.0]


def test_li_ls_alternating():
    est = estimate_li_ls(_orbit([[float(n % 2)] for n in range(8)]), 8, 1e-3)
    assert est.li_points.is_empty
    assert sorted(est.ls_points.points[:, 0]) == [0.0, 1.0]


def test_li_ls_one_over_n():
    est = estimate_li_ls(_orbit([[1.0 / n] for n in range(80, 100)], 3e-3), 20, 3e-3)
    for S in (est.li_points, est.ls_points):
        assert not S.is_empty
        assert S.points.max() <= 0.013
    assert nearest_distances(REAL_LINE, est.li_points.points, est.ls_points.points).max() <= 3e-3


def test_li_ls_window_errors():
    with pytest.raises(ValueError):
        estimate_li_ls(_orbit([[0.0]] * 3), 5, 1e-3)


def test_li_ls_union_rule():
    tol = 1e-3
    A = [[1.0 / n] for n in range(50, 70)]
    B = [[2.0 + float(n % 2)] for n in range(50, 70)]
    U = [a + b for a, b in zip(A, B)]
    ea, eb, eu = (estimate_li_ls(_orbit(x, tol), 10, tol).ls_points for x in (A, B, U))
    assert hausdorff_distance(eu, ea.union(eb)) <= tol
