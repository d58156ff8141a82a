import math

import numpy as np
import pytest

from tuav_place.channel import PRESETS, PathLossMode, path_loss
from tuav_place.geometry import HALF_PI, PlacementConfig, Point3, Regime, TetherCoord, is_feasible, to_cartesian
from tuav_place.optimizer import (
    FreeVariable,
    SolutionKind,
    bounds_endpoint_pl,
    brute_force,
    critical_t,
    critical_theta,
    in_boundary_set,
    opt_bounds,
    solve,
    suboptimal,
    suboptimal_closed_form,
)

DENSE = PRESETS["dense-urban"]
MODES = list(PathLossMode)

# Frozen from a standalone 4001x4001 grid search with local refinement (no package code).
GOLDEN_PL_D300 = {PathLossMode.LINEAR: 63.79792447746455, PathLossMode.ADDITIVE_DB: 54.60190634199162}
GOLDEN_TMAX_GAIN_D150 = 18.096502000048247  # linear mode, PL(T_max=50) - PL(T_max=150)


def cfg(d, theta_min_deg=0.0, h_b=30.0, t_max=150.0):
    return PlacementConfig.from_degrees(h_b=h_b, d=d, t_max=t_max, theta_min_deg=theta_min_deg)


def test_critical_t_examples():
    c = cfg(100)
    assert critical_t(c, 0.0) == pytest.approx(100)
    assert critical_t(c, HALF_PI) == pytest.approx(-30)
    assert critical_t(c, math.radians(30)) == pytest.approx(71.603, abs=1e-3)


@pytest.mark.parametrize("d, h_b, theta", [(100, 30, 0.5), (300, 10, 0.1), (50, 80, 1.2)])
def test_critical_t_minimizes_range(d, h_b, theta):
    c = cfg(d, h_b=h_b)
    ts = np.linspace(-400, 400, 800_001)
    r2 = (d - ts * math.cos(theta)) ** 2 + (h_b + ts * math.sin(theta)) ** 2
    assert ts[np.argmin(r2)] == pytest.approx(critical_t(c, theta), abs=2e-3)


def test_critical_theta_examples():
    c = cfg(300)
    assert critical_theta(c, 300) == pytest.approx(0.0, abs=1e-12)
    assert critical_theta(c, 0) == pytest.approx(math.asin(300 / math.hypot(300, 30)))
    assert critical_theta(c, 150) == pytest.approx(0.9504, abs=1e-4)
    with pytest.raises(ValueError):
        critical_theta(c, 400)


@pytest.mark.parametrize("d, h_b, t", [(300, 30, 150), (200, 50, 20), (120, 10, 119)])
def test_critical_theta_maximizes_elevation(d, h_b, t):
    c = cfg(d, h_b=h_b)
    th = np.linspace(0, HALF_PI, 1_000_001)
    ratio = (h_b + t * np.sin(th)) / (d - t * np.cos(th))
    assert th[np.argmax(ratio)] == pytest.approx(critical_theta(c, t), abs=1e-5)


def test_opt_bounds_examples():
    b = opt_bounds(cfg(100))
    assert b.regime is Regime.NEAR_FIELD and b.free_variable is FreeVariable.TETHER_LENGTH
    assert (b.lower, b.upper, b.fixed_value) == (pytest.approx(100), pytest.approx(100), 0.0)

    b = opt_bounds(cfg(300))
    assert b.regime is Regime.FAR_FIELD and b.free_variable is FreeVariable.INCLINATION_ANGLE
    assert b.fixed_value == 150 and b.lower == 0.0 and b.upper == pytest.approx(0.9504, abs=1e-4)

    b = opt_bounds(cfg(160, 15))
    th = math.radians(15)
    assert 150 * math.cos(th) < 160 < 150 / math.cos(th) + 30 * math.tan(th)
    assert b.regime is Regime.MID_FIELD and b.fixed_value == pytest.approx(th)
    assert b.lower == pytest.approx(160 * math.cos(th) - 30 * math.sin(th)) and b.upper == 150
    assert b.lower == pytest.approx(146.79, abs=0.01)


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("d", [0.5, 37.0, 100.0, 149.0, 150.0])
def test_solve_reduces_to_closed_form_without_min_angle(d, mode):
    sol = solve(cfg(d), DENSE, mode)
    assert sol.kind is SolutionKind.OPTIMAL
    assert sol.coord.t == pytest.approx(d, abs=1e-6) and sol.coord.theta == 0.0
    assert sol.position.x == pytest.approx(0.0, abs=1e-9) and sol.position.z == 30.0


def test_solve_zero_distance_is_retracted_vertical():
    sol = solve(cfg(0.0), DENSE)
    assert (sol.coord.t, sol.coord.theta) == (0.0, HALF_PI)
    assert sol.pl_db == pytest.approx(path_loss(Point3(0, 0, 30), DENSE))
    bf = brute_force(cfg(0.0), DENSE, grid_n=200)
    assert sol.pl_db <= bf.pl_db + 1e-9


@pytest.mark.parametrize("mode", MODES)
def test_solve_far_field_golden(mode):
    sol = solve(cfg(300), DENSE, mode)
    assert 0.0 <= sol.coord.theta <= 0.9504 and sol.coord.t == 150
    assert sol.pl_db == pytest.approx(GOLDEN_PL_D300[mode], abs=1e-4)
    assert sol.pl_db <= brute_force(cfg(300), DENSE, mode).pl_db + 0.01


def test_tether_length_gain_golden():
    gain = solve(cfg(150, t_max=50), DENSE).pl_db - solve(cfg(150), DENSE).pl_db
    assert gain == pytest.approx(GOLDEN_TMAX_GAIN_D150, abs=1e-4)


def test_suboptimal_examples():
    sub = suboptimal(cfg(80), DENSE)
    assert sub.kind is SolutionKind.SUBOPTIMAL
    cf = suboptimal_closed_form(cfg(80), DENSE)
    assert cf.p_los == pytest.approx(0.37 * 75 ** 0.21) and cf.range_r == pytest.approx(30)

    c = cfg(100, 15)
    sub = suboptimal(c, DENSE)
    assert sub.coord.t == pytest.approx(100 / math.cos(math.radians(15))) and sub.coord.t == pytest.approx(103.53, abs=0.01)
    assert suboptimal_closed_form(c, DENSE).range_r == pytest.approx(56.79, abs=0.01)

    c = cfg(300)
    sub = suboptimal(c, DENSE)
    assert sub.coord == TetherCoord(150, pytest.approx(critical_theta(c, 150)))
    assert sub.range_r == pytest.approx(math.sqrt(68400)) and sub.range_r == pytest.approx(261.53, abs=0.01)


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("theta_min_deg", [0, 10, 25, 45])
def test_suboptimal_never_beats_optimal(mode, theta_min_deg):
    for d in np.arange(0, 520, 20.0):
        c = cfg(d, theta_min_deg)
        assert suboptimal(c, DENSE, mode).pl_db - solve(c, DENSE, mode).pl_db >= -1e-6


def test_bounds_endpoint_pl_brackets_the_optimum():
    for d in (50, 160, 300):
        c = cfg(d, 15)
        lo, hi = bounds_endpoint_pl(c, DENSE)
        assert solve(c, DENSE).pl_db <= min(lo, hi) + 1e-12


def test_brute_force_contract():
    with pytest.raises(ValueError):
        brute_force(cfg(100), DENSE, grid_n=99)
    bf = brute_force(cfg(100), DENSE, grid_n=400)
    assert bf.kind is SolutionKind.BRUTE_FORCE
    assert is_feasible(cfg(100), bf.coord)
    assert bf.position == to_cartesian(cfg(100), bf.coord)
    assert bf.coord.t == pytest.approx(100, abs=150 / 399) and bf.coord.theta == pytest.approx(0, abs=HALF_PI / 399)


def test_brute_force_independent_of_workers():
    c = cfg(230, 10)
    runs = [brute_force(c, DENSE, grid_n=300, workers=w) for w in (1, 3, 8)]
    assert runs[0] == runs[1] == runs[2]


@pytest.mark.parametrize("mode", MODES)
@pytest.mark.parametrize("theta_min_deg", [0, 15, 30, 50])
def test_brute_force_optimum_on_boundary_sets(mode, theta_min_deg):
    n = 300
    for d in (20, 90, 140, 175, 220, 320, 480):
        c = cfg(d, theta_min_deg)
        bf = brute_force(c, DENSE, mode, grid_n=n)
        assert in_boundary_set(c, bf.coord, c.t_max / (n - 1), (HALF_PI - c.theta_min) / (n - 1)), (d, bf.coord)
