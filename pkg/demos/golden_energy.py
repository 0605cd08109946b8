"""Discrete energies of the circular-arc family against 4 + pi/2.

For the height-2 step datum with p = 1 every member of the arc pair
family u_{a,b} is a continuum minimizer with energy 4 + pi/2.  The
table shows the sampled discrete energy converging at the sqrt(h)
rate, and the solver landing on the same value.

    python3 demos/golden_energy.py
"""

from anisocurve import Anisotropy, Grid, GSpec, SolverConfig, energy, solve
from anisocurve import reference as ref

EUCLID = Anisotropy.euclidean()


def main():
    exact = ref.arc_pair_energy()
    print(f"continuum energy: {exact:.6f}")
    print(f"\n{'n':>6} {'E(u_00)':>10} {'E(u_1m1)':>10} {'err':>9}")
    for n in (256, 1024, 4096, 16384):
        grid = Grid(-1, 1, n)
        g = GSpec.step(2.0).sample(grid)
        e0 = energy(EUCLID, ref.sample_profile(grid, ref.arc_pair_profile, 0.0, 0.0),
                    g, 1.0).total
        e1 = energy(EUCLID, ref.sample_profile(grid, ref.arc_pair_profile, 1.0, -1.0),
                    g, 1.0).total
        print(f"{n:>6} {e0:10.6f} {e1:10.6f} {max(abs(e0 - exact), abs(e1 - exact)):9.2e}")

    grid = Grid(-1, 1, 4096)
    g = GSpec.step(2.0).sample(grid)
    rep = solve(EUCLID, grid, g, 1.0, SolverConfig(max_iters=20_000))
    print(f"\nsolver at n = 4096: {rep.energy.total:.6f} "
          f"(gap {abs(rep.energy.total - exact):.2e})")


if __name__ == "__main__":
    main()
