"""Regularity diagnostics: Lipschitz link, refinement study, tangent balls."""

import math

import numpy as np
import pytest

from anisocurve import (
    Anisotropy,
    Grid,
    GSpec,
    Profile,
    SolverConfig,
    lipschitz_report,
    refinement_study,
    solve,
    tangent_ball_check,
)
from anisocurve import reference as ref

EUCLID = Anisotropy.euclidean()


def test_lipschitz_flat_profile():
    grid = Grid(-1, 1, 16)
    rep = lipschitz_report(Profile(grid, np.zeros(17)), np.zeros(17))
    assert rep.lipschitz_estimate == 0.0
    assert rep.normal_deviation_min == pytest.approx(1.0)
    assert rep.max_principle_ok


def test_lipschitz_linear_slope_one():
    grid = Grid(-1, 1, 16)
    nodes = grid.nodes()
    rep = lipschitz_report(Profile(grid, nodes), nodes)
    assert rep.lipschitz_estimate == pytest.approx(1.0)
    assert rep.normal_deviation_min == pytest.approx(1.0 / math.sqrt(2.0))


def test_lipschitz_c11_sample_matches_arc_slope():
    a = 0.05
    grid = Grid(-1, 1, 2048)
    u = ref.sample_profile(grid, ref.c11_minimizer, a)
    g = GSpec.step(a).sample(grid)
    rep = lipschitz_report(u, g)
    assert rep.lipschitz_estimate == pytest.approx(ref.c11_max_slope(a), abs=5e-2)


def test_lipschitz_link_formula_random():
    rng = np.random.default_rng(4)
    grid = Grid(-1, 1, 64)
    for _ in range(20):
        u = Profile(grid, rng.uniform(-1, 1, 65))
        rep = lipschitz_report(u, np.zeros(65))
        lam = rep.normal_deviation_min
        assert rep.lipschitz_estimate == pytest.approx(
            math.sqrt(1.0 / lam**2 - 1.0), abs=1e-9
        )


def test_max_principle_margins():
    grid = Grid(-1, 1, 8)
    g = np.linspace(-0.5, 0.25, 9)
    inside = Profile(grid, np.zeros(9))
    assert lipschitz_report(inside, g).max_principle_ok
    outside = Profile(grid, np.full(9, 0.4))
    rep = lipschitz_report(outside, g)
    assert not rep.max_principle_ok
    assert rep.max_principle_margin_high < 0.0


# -- refinement study ---------------------------------------------------


def test_refinement_constant_datum_is_lipschitz():
    study = refinement_study(EUCLID, Grid(-1, 1, 16), GSpec.constant(0.3), 1.5)
    assert study.classification == "lipschitz"
    assert max(study.slope_maxima) < 1e-9


def test_refinement_needs_three_levels():
    with pytest.raises(ValueError):
        refinement_study(EUCLID, Grid(-1, 1, 16), GSpec.constant(0.0), 1.0, levels=2)


def test_refinement_below_threshold_lipschitz():
    study = refinement_study(EUCLID, Grid(-1, 1, 64), GSpec.step(0.05), 1.0,
                             cfg=SolverConfig(max_iters=8000))
    assert study.classification == "lipschitz"
    assert study.cells == [64, 128, 256]


def test_refinement_above_threshold_jump():
    study = refinement_study(EUCLID, Grid(-1, 1, 64), GSpec.step(2.0), 1.0,
                             cfg=SolverConfig(max_iters=8000))
    assert study.classification == "jump_suspected"


# -- tangent ball -------------------------------------------------------


def test_tangent_ball_flat_profile():
    grid = Grid(-1, 1, 64)
    u = Profile(grid, np.zeros(65))
    rep = tangent_ball_check(EUCLID, u, 0.7)
    assert rep.fraction_verified_above == 1.0
    assert rep.fraction_verified_below == 1.0
    assert rep.radius_tested == 0.7


def test_tangent_ball_rejects_bad_radius():
    grid = Grid(-1, 1, 8)
    with pytest.raises(ValueError):
        tangent_ball_check(EUCLID, Profile(grid, np.zeros(9)), 0.0)


def test_tangent_ball_c11_sample():
    a = 0.05
    grid = Grid(-1, 1, 1024)
    u = ref.sample_profile(grid, ref.c11_minimizer, a)
    rep = tangent_ball_check(EUCLID, u, 0.5)
    assert rep.fraction_verified_above == 1.0
    assert rep.fraction_verified_below == 1.0


def test_tangent_ball_step_fails_below():
    grid = Grid(-1, 1, 256)
    u = Profile(grid, np.where(grid.nodes() > 0, 1.0, 0.0))
    rep = tangent_ball_check(EUCLID, u, 0.1)
    assert rep.fraction_verified_below < 1.0


def test_tangent_ball_solver_output_at_theory_radius():
    # Prop-level invariant: below sigma the solution admits balls of
    # radius 0.9 alpha0 / Lambda from both sides
    from anisocurve import sigma_threshold

    rep = sigma_threshold(EUCLID, 1.0, 2.0)
    grid = Grid(-1, 1, 512)
    g = GSpec.step(0.05).sample(grid)
    sol = solve(EUCLID, grid, g, 1.0)
    ball = tangent_ball_check(EUCLID, sol.profile, 0.9 * rep.alpha0 / rep.lam)
    assert ball.fraction_verified_above >= 0.99
    assert ball.fraction_verified_below >= 0.99
