"""Contracting systems: the operator orbit shrinks geometrically onto the attractor."""
import numpy as np

from ifslab import maps as mp
from ifslab import regions as rg
from ifslab.hutchinson import IfsSystem, iterate_orbit
from ifslab.sets import CompactSetApprox
from ifslab.spaces import REAL_LINE


def main(eps=1e-4, n=30):
    halves = [mp.affine(REAL_LINE, 0.5, 0.0), mp.affine(REAL_LINE, 0.5, 0.5)]
    target = CompactSetApprox(REAL_LINE, rg.Interval(0, 1).net(eps), eps)
    F = IfsSystem(REAL_LINE, halves, target)
    seed = CompactSetApprox(REAL_LINE, rg.Interval(-2, 2).net(0.1), eps)
    rec = iterate_orbit(F, seed, n, eps)
    d = np.array(rec.distances_to_target)
    for k in range(0, n + 1, 5):
        print(f"step {k:2d}  points {rec.point_counts[k]:6d}  d_H = {d[k]:.3e}")
    print("ratio per step:", np.round(d[1:8] / d[:7], 3))


if __name__ == "__main__":
    main()
