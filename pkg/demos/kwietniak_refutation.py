"""The map x -> x+1 on the compactified line.

Every orbit converges to infinity, so {inf} is a pointwise attractor, but the
backward witness x_n = -5 - n keeps -5 inside F^n(K) for every compact K
around infinity, so it is not a strict attractor.
"""
import numpy as np

from ifslab import analysis as an
from ifslab.gallery import kwietniak_system


def main(eps=1e-2):
    F, A = kwietniak_system()
    phi = F.maps[0]
    seeds = np.random.default_rng(0).uniform(-50, 50, 10)
    verdicts = [an.pointwise_test(F, [x], A, 1000, 1e-2, eps).verdict for x in seeds]
    print("pointwise verdicts:", sorted(set(verdicts)))
    w = an.witnessing_sequence(phi, [-5.0], [np.inf], 100)
    ref = an.strict_refute(F, A, w, eps)
    print(f"d(x0, A) = {ref.x0_distance:.4f}, min margin = {ref.min_margin:.4f}, refuted = {ref.refuted}")


if __name__ == "__main__":
    main()
