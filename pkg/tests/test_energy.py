"""Discrete energy, datum sampling, truncation and profile I/O tests."""

import math

import numpy as np
import pytest

from anisocurve import (
    Anisotropy,
    Grid,
    GSpec,
    Profile,
    energy,
    read_profile_csv,
    sample_g,
    truncate,
    write_profile_csv,
)
from anisocurve.energy import IngestionError
from anisocurve import reference as ref

EUCLID = Anisotropy.euclidean()


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(1.0, 1.0, 4)
    with pytest.raises(ValueError):
        Grid(0.0, 1.0, 0)


def test_profile_validation():
    grid = Grid(0.0, 1.0, 2)
    with pytest.raises(ValueError):
        Profile(grid, np.zeros(2))
    with pytest.raises(ValueError):
        Profile(grid, np.array([0.0, np.nan, 0.0]))


# -- sample_g -----------------------------------------------------------


def test_sample_constant():
    g = sample_g(GSpec.constant(0.5), Grid(-1, 1, 8))
    np.testing.assert_allclose(g, 0.5)


def test_sample_step_averages_at_discontinuity():
    g = sample_g(GSpec.step(2.0), Grid(-1, 1, 4))
    np.testing.assert_allclose(g, [-2.0, -2.0, 0.0, 2.0, 2.0])


def test_sample_csv_linear(tmp_path):
    path = tmp_path / "g.csv"
    path.write_text("s,g\n-1,0\n1,1\n")
    g = sample_g(GSpec.csv(path), Grid(-1, 1, 2))
    np.testing.assert_allclose(g, [0.0, 0.5, 1.0])


def test_sample_csv_piecewise_constant(tmp_path):
    path = tmp_path / "g.csv"
    path.write_text("s,g\n-1,3\n0,7\n1,7\n")
    g = sample_g(GSpec.csv(path, interp="piecewise-constant"), Grid(-1, 1, 4))
    np.testing.assert_allclose(g, [3.0, 3.0, 7.0, 7.0, 7.0])


def test_sample_csv_must_cover_interval(tmp_path):
    path = tmp_path / "g.csv"
    path.write_text("s,g\n-0.5,0\n0.5,1\n")
    with pytest.raises(IngestionError):
        sample_g(GSpec.csv(path), Grid(-1, 1, 2))


def test_csv_rejects_nonincreasing_abscissae(tmp_path):
    path = tmp_path / "g.csv"
    path.write_text("s,g\n0,0\n0,1\n")
    with pytest.raises(IngestionError):
        GSpec.csv(path)


# -- energy -------------------------------------------------------------


def test_flat_profile_energy_is_interval_length():
    grid = Grid(-1, 1, 17)
    u = Profile(grid, np.zeros(18))
    e = energy(EUCLID, u, np.zeros(18), 1.0)
    assert e.area == pytest.approx(2.0, abs=1e-12)
    assert e.fidelity == 0.0
    assert e.total == e.area + e.fidelity


@pytest.mark.parametrize("shifts", [(0.0, 0.0), (1.0, -1.0)])
def test_golden_arc_pair_energy(shifts):
    a, b = shifts
    grid = Grid(-1, 1, 4096)
    g = GSpec.step(2.0).sample(grid)
    u = ref.sample_profile(grid, ref.arc_pair_profile, a, b)
    total = energy(EUCLID, u, g, 1.0).total
    assert total == pytest.approx(4.0 + math.pi / 2.0, abs=5e-2)


def test_golden_energy_error_halves_under_refinement():
    target = 4.0 + math.pi / 2.0
    errs = {}
    for n in (1024, 4096):
        grid = Grid(-1, 1, n)
        g = GSpec.step(2.0).sample(grid)
        u = ref.sample_profile(grid, ref.arc_pair_profile, 0.0, 0.0)
        errs[n] = abs(energy(EUCLID, u, g, 1.0).total - target)
    assert errs[1024] >= 2.0 * errs[4096]


def test_energy_rejects_p_below_one():
    grid = Grid(0, 1, 2)
    u = Profile(grid, np.zeros(3))
    with pytest.raises(ValueError):
        energy(EUCLID, u, np.zeros(3), 0.5)


def test_energy_convexity():
    rng = np.random.default_rng(12)
    grid = Grid(-1, 1, 32)
    g = rng.uniform(-1, 1, 33)
    for p in (1.0, 1.5, 2.0):
        for _ in range(20):
            u = rng.uniform(-1, 1, 33)
            v = rng.uniform(-1, 1, 33)
            lam = float(rng.random())
            eu = energy(EUCLID, Profile(grid, u), g, p).total
            ev = energy(EUCLID, Profile(grid, v), g, p).total
            mix = energy(EUCLID, Profile(grid, lam * u + (1 - lam) * v), g, p).total
            assert mix <= lam * eu + (1 - lam) * ev + 1e-9


def test_truncate_examples():
    grid = Grid(0, 1, 2)
    u = Profile(grid, np.array([-3.0, 0.0, 3.0]))
    np.testing.assert_allclose(truncate(u, -1.0, 1.0).values, [-1.0, 0.0, 1.0])
    inside = Profile(grid, np.array([0.1, 0.2, 0.3]))
    np.testing.assert_allclose(truncate(inside, -1.0, 1.0).values, inside.values)
    with pytest.raises(ValueError):
        truncate(u, 1.0, -1.0)


def test_truncation_never_increases_energy():
    rng = np.random.default_rng(7)
    grid = Grid(-1, 1, 48)
    for aniso in (EUCLID, Anisotropy.lp(1.0),
                  Anisotropy.polygon([[1, 1], [-1, 1], [-1, -1], [1, -1]])):
        for p in (1.0, 2.0):
            g = rng.uniform(-0.8, 0.6, 49)
            lo = -float(np.max(np.maximum(-g, 0.0)))
            hi = float(np.max(np.maximum(g, 0.0)))
            for _ in range(10):
                u = Profile(grid, rng.uniform(-2.0, 2.0, 49))
                before = energy(aniso, u, g, p).total
                after = energy(aniso, truncate(u, lo, hi), g, p).total
                assert after <= before + 1e-12


def test_mesh_consistency_smooth_profile():
    diffs = []
    prev = None
    for n in (128, 256, 512):
        grid = Grid(-1, 1, n)
        u = Profile(grid, np.sin(2.0 * grid.nodes()))
        g = np.zeros(n + 1)
        total = energy(EUCLID, u, g, 2.0).total
        if prev is not None:
            diffs.append(abs(total - prev))
        prev = total
    assert diffs[1] <= 0.75 * diffs[0]


def test_jump_consistency_unit_step():
    # area -> phi°(0,1)*|I| + phi°(e1)*1 as the grid refines
    target = 2.0 + 1.0
    errs = []
    for n in (64, 128, 256):
        grid = Grid(-1, 1, n)
        vals = np.where(grid.nodes() > 0, 1.0, 0.0)
        u = Profile(grid, vals)
        errs.append(abs(energy(EUCLID, u, np.zeros(n + 1), 1.0).area - target))
    assert errs[-1] < errs[0]
    assert errs[-1] < 10.0 / 256.0


def test_profile_csv_round_trip(tmp_path):
    grid = Grid(-1, 1, 9)
    u = Profile(grid, np.linspace(-0.3, 0.7, 10) ** 3)
    path = tmp_path / "u.csv"
    write_profile_csv(u, path)
    v = read_profile_csv(path)
    assert v.grid == u.grid
    np.testing.assert_array_equal(v.values, u.values)


def test_profile_csv_rejects_nonuniform(tmp_path):
    path = tmp_path / "u.csv"
    path.write_text("s,u\n0,0\n0.5,0\n2,0\n")
    with pytest.raises(IngestionError):
        read_profile_csv(path)
