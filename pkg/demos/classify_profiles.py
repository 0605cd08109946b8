"""Cahn-Hoffman feasibility for a few profiles.

A profile is a zero-local-minimizer exactly when some single point of
the Wulff boundary pairs maximally with every edge normal of its
graph.  Staircases against the square gauge always admit the corner
(-1, 1); a genuinely curved profile against the Euclidean gauge never
admits a common normal.

    python3 demos/classify_profiles.py
"""

import numpy as np

from anisocurve import Anisotropy, Grid, Profile, cahn_hoffman

EUCLID = Anisotropy.euclidean()
SQUARE = Anisotropy.polygon([[1, 1], [-1, 1], [-1, -1], [1, -1]])


def report(name, aniso, profile):
    res = cahn_hoffman(aniso, profile)
    print(f"\n{name}")
    print(f"  feasible: {res.feasible}, monotone: {res.monotone}")
    if res.feasible:
        m = res.witness_arc.midpoint
        print(f"  witness arc midpoint ({m[0]:.4f}, {m[1]:.4f}), "
              f"length {res.witness_arc.length:.4f}")
    elif res.infeasibility_witness is not None:
        print(f"  conflicting edge pair: {res.infeasibility_witness}")
    if res.hypothesis_warning:
        print(f"  warning: {res.hypothesis_warning}")


def main():
    grid = Grid(-1, 1, 64)
    nodes = grid.nodes()
    rng = np.random.default_rng(3)

    report("flat profile, euclidean", EUCLID, Profile(grid, np.zeros(65)))
    report("linear ramp slope 1/2, euclidean", EUCLID, Profile(grid, 0.5 * nodes))
    report("tanh profile, euclidean", EUCLID, Profile(grid, np.tanh(2.0 * nodes)))

    du = np.where(rng.random(64) < 0.6, 0.0, rng.uniform(0.1, 0.5, 64))
    stair = np.concatenate([[0.0], np.cumsum(du)])
    report("random staircase, square gauge", SQUARE, Profile(grid, stair))
    report("same staircase, euclidean", EUCLID, Profile(grid, stair))


if __name__ == "__main__":
    main()
