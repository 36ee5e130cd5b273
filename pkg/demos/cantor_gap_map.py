"""Cantor set: a gap-wise ALR map that commutes with W.

The full map passes the commutativity check, the simplified one does not,
yet both systems W + phi have the Cantor set as a pointwise but not strict attractor.
"""
import numpy as np

from ifslab import analysis as an
from ifslab import gallery as gl
from ifslab.sets import CompactSetApprox
from ifslab.spaces import REAL_LINE


def run(system, eps=1e-4):
    X = CompactSetApprox(REAL_LINE, np.random.default_rng(0).uniform(0, 1, 10_000), 1e-9)
    comm = gl.commutativity_check(system, X)
    F = system.W.with_maps(system.phi)
    A = system.fractal_ref
    seeds = np.random.default_rng(1).uniform(0, 1, 20)
    conv = sum(an.pointwise_test(F, [x], A, 15, 0.02, eps).converged for x in seeds)
    w = an.witnessing_sequence(system.phi, [0.5], [2 / 3], 40)
    ref = an.strict_refute(F, A, w, eps)
    label = "simplified" if system.simplified else "full"
    print(f"{label:10s} commutativity defect {comm.max_defect:.2e}  converged {conv}/20  "
          f"strict refuted {ref.refuted} (min distance {ref.min_distance:.4f})")


if __name__ == "__main__":
    run(gl.cantor_system())
    run(gl.cantor_system(simplified=True))
