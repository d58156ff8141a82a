import math

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from tuav_place.geometry import (
    ConfigError,
    PlacementConfig,
    Point3,
    Regime,
    TetherCoord,
    in_hovering_region,
    is_feasible,
    regime,
    threshold_f,
    to_cartesian,
    to_tether,
)

CFG = PlacementConfig.from_degrees(h_b=30, d=100, t_max=150, theta_min_deg=0)


@pytest.mark.parametrize("theta", [0.0, 0.4, math.pi / 2])
def test_zero_tether_sits_on_rooftop(theta):
    assert to_cartesian(CFG, TetherCoord(0, theta)) == Point3(100, 0, 30)


def test_cartesian_examples():
    assert to_cartesian(CFG, TetherCoord(100, 0)) == Point3(0, 0, 30)
    p = to_cartesian(CFG, TetherCoord(150, math.pi / 2))
    assert p.x == pytest.approx(100, abs=1e-12) and p.z == pytest.approx(180)


def test_feasibility_examples():
    assert is_feasible(CFG, TetherCoord(100, 0))
    assert not is_feasible(CFG, TetherCoord(160, 0.3))
    assert not is_feasible(CFG, TetherCoord(150, 0))
    steep = PlacementConfig.from_degrees(30, 100, 150, 20)
    assert not is_feasible(steep, TetherCoord(50, math.radians(19)))


def test_degenerate_zero_distance():
    cfg = CFG.replace(d=0.0)
    assert is_feasible(cfg, TetherCoord(0, 0.3))
    assert is_feasible(cfg, TetherCoord(120, math.pi / 2))
    assert not is_feasible(cfg, TetherCoord(120, 1.5))


def test_hovering_region_examples():
    steep = PlacementConfig.from_degrees(h_b=30, d=100, t_max=150, theta_min_deg=25)
    assert in_hovering_region(steep, Point3(100, 0, 180))
    assert not in_hovering_region(steep, Point3(100, 0, 181))
    th = steep.theta_min
    below = Point3(100 - 150 * math.cos(th) * 0.5, 0, 30 + 150 * math.sin(th) * 0.5 - 0.01)
    assert math.asin((below.z - 30) / math.hypot(100 - below.x, below.z - 30)) < th
    assert not in_hovering_region(steep, below)
    assert in_hovering_region(steep, Point3(100, 0, 30))


def test_threshold_and_regime():
    assert threshold_f(PlacementConfig.from_degrees(30, 100, 150, 0)) == pytest.approx(150)
    f30 = threshold_f(PlacementConfig.from_degrees(30, 100, 150, 30))
    assert f30 == pytest.approx(150 / math.cos(math.radians(30)) + 30 * math.tan(math.radians(30)))
    assert f30 == pytest.approx(190.526, abs=1e-3)
    assert regime(CFG) is Regime.NEAR_FIELD
    assert regime(PlacementConfig.from_degrees(30, 160, 150, 15)) is Regime.MID_FIELD
    assert regime(PlacementConfig.from_degrees(30, 300, 150, 0)) is Regime.FAR_FIELD
    assert regime(PlacementConfig.from_degrees(30, 150, 150, 0)) is Regime.NEAR_FIELD


@pytest.mark.parametrize("kwargs", [
    dict(h_b=0, d=10, t_max=150, theta_min_deg=0),
    dict(h_b=30, d=-1, t_max=150, theta_min_deg=0),
    dict(h_b=30, d=10, t_max=0, theta_min_deg=0),
    dict(h_b=30, d=10, t_max=150, theta_min_deg=90),
    dict(h_b=30, d=10, t_max=150, theta_min_deg=-1),
])
def test_config_invariants(kwargs):
    with pytest.raises(ConfigError):
        PlacementConfig.from_degrees(**kwargs)


configs = st.builds(
    PlacementConfig.from_degrees,
    h_b=st.floats(1, 100), d=st.one_of(st.just(0.0), st.floats(1e-3, 500)), t_max=st.floats(10, 300), theta_min_deg=st.floats(0, 80),
)


@settings(max_examples=500, deadline=None)
@given(configs, st.floats(0, 1), st.floats(0, 1))
def test_round_trip_feasible_to_region(cfg, u, v):
    theta = cfg.theta_min + v * (math.pi / 2 - cfg.theta_min)
    t = u * cfg.t_max
    if t * math.cos(theta) > cfg.d:
        t = cfg.d / math.cos(theta) if math.cos(theta) > 0 else t
    c = TetherCoord(t, theta)
    assert is_feasible(cfg, c)
    p = to_cartesian(cfg, c)
    assert in_hovering_region(cfg, p)
    back = to_tether(cfg, p)
    assert back.t == pytest.approx(t, abs=1e-9 * max(1, t))
    if t > 1e-3:
        assert back.theta == pytest.approx(theta, abs=1e-9)


@settings(max_examples=500, deadline=None)
@given(configs, st.floats(0, 1), st.floats(0, 1), st.floats(-1, 1))
def test_region_points_between_receiver_and_rooftop_map_to_feasible(cfg, u, v, w):
    # Points of the region with 0 <= x <= d project onto a feasible tether coordinate.
    length = u * cfg.t_max
    assume(length == 0.0 or length > 1e-4)  # angles of sub-millimetre tethers are ill-conditioned
    elev = cfg.theta_min + v * (math.pi / 2 - cfg.theta_min)
    horiz = length * math.cos(elev)
    dx = min(horiz, cfg.d)
    y = w * math.sqrt(max(horiz * horiz - dx * dx, 0.0))
    p = Point3(cfg.d - dx, y, cfg.h_b + length * math.sin(elev))
    assert in_hovering_region(cfg, p)
    assert is_feasible(cfg, to_tether(cfg, Point3(p.x, 0.0, p.z)))
