"""Optimal and suboptimal TUAV placement.

The exact optimizer searches only the one-dimensional set that provably holds
the optimum (one tether coordinate pinned to its limit, the other bounded by
the critical values below). :func:`brute_force` scans the full ``(t, theta)``
rectangle and exists as an independent check of that reduction.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import channel
from ._parallel import ordered_map
from .channel import Environment, PathLossMode, Point3
from .geometry import (
    FEASIBILITY_RTOL,
    HALF_PI,
    PlacementConfig,
    Regime,
    TetherCoord,
    regime,
    threshold_f,
    to_cartesian,
)
from .search import scan_minimize

T_TOL = 1e-6  # m
THETA_TOL = 1e-8  # rad
N_SCAN = 2001
TIE_DB = 1e-12


class FreeVariable(enum.Enum):
    TETHER_LENGTH = "t"
    INCLINATION_ANGLE = "theta"


class SolutionKind(enum.Enum):
    OPTIMAL = "optimal"
    SUBOPTIMAL = "suboptimal"
    BRUTE_FORCE = "brute-force"


@dataclass(frozen=True)
class OptBounds:
    regime: Regime
    free_variable: FreeVariable
    fixed_value: float  # theta_min (rad) or T_max (m)
    lower: float
    upper: float

    def coord(self, value: float) -> TetherCoord:
        if self.free_variable is FreeVariable.TETHER_LENGTH:
            return TetherCoord(value, self.fixed_value)
        return TetherCoord(self.fixed_value, value)

    @property
    def t_range(self) -> tuple[float, float]:
        if self.free_variable is FreeVariable.TETHER_LENGTH:
            return self.lower, self.upper
        return self.fixed_value, self.fixed_value

    @property
    def theta_range(self) -> tuple[float, float]:
        if self.free_variable is FreeVariable.INCLINATION_ANGLE:
            return self.lower, self.upper
        return self.fixed_value, self.fixed_value


@dataclass(frozen=True)
class PlacementSolution:
    coord: TetherCoord
    position: Point3
    p_los: float
    range_r: float
    pl_db: float
    regime: Regime
    kind: SolutionKind
    mode: PathLossMode = PathLossMode.LINEAR

    def to_dict(self) -> dict:
        return {
            "t_m": self.coord.t,
            "theta_deg": math.degrees(self.coord.theta),
            "x_m": self.position.x,
            "z_m": self.position.z,
            "p_los": self.p_los,
            "r_m": self.range_r,
            "pl_db": self.pl_db,
            "regime": self.regime.value,
            "kind": self.kind.value,
            "mode": self.mode.value,
        }


@dataclass(frozen=True)
class ClosedForm:
    """Closed-form LoS probability, range and path-loss of the suboptimal placement."""

    p_los: float
    range_r: float
    pl_db: float


def critical_t(cfg: PlacementConfig, theta: float) -> float:
    """Tether length minimizing the range at a fixed inclination; may be negative."""
    return cfg.d * math.cos(theta) - cfg.h_b * math.sin(theta)


def critical_theta(cfg: PlacementConfig, t: float) -> float:
    """Inclination maximizing the elevation angle at a fixed tether length; may be negative."""
    diag = math.hypot(cfg.d, cfg.h_b)
    if t > diag * (1.0 + FEASIBILITY_RTOL):
        raise ValueError(f"tether length {t} exceeds the rooftop-to-receiver distance {diag}")
    return math.asin(cfg.d / diag) - math.asin(min(t / diag, 1.0))


def opt_bounds(cfg: PlacementConfig) -> OptBounds:
    reg = regime(cfg)
    if cfg.d == 0.0:
        # Only the vertical axis is reachable; the retracted tether is reported as vertical.
        return OptBounds(reg, FreeVariable.TETHER_LENGTH, HALF_PI, 0.0, 0.0)
    if reg is Regime.FAR_FIELD:
        lower = cfg.theta_min
        upper = min(max(critical_theta(cfg, cfg.t_max), lower), HALF_PI)
        return OptBounds(reg, FreeVariable.INCLINATION_ANGLE, cfg.t_max, lower, upper)
    if reg is Regime.NEAR_FIELD:
        upper = cfg.d / math.cos(cfg.theta_min)
    else:
        upper = cfg.t_max
    lower = min(max(0.0, critical_t(cfg, cfg.theta_min)), upper)
    return OptBounds(reg, FreeVariable.TETHER_LENGTH, cfg.theta_min, lower, upper)


def evaluate(
    cfg: PlacementConfig,
    coord: TetherCoord,
    env: Environment,
    mode: PathLossMode = PathLossMode.LINEAR,
    kind: SolutionKind = SolutionKind.OPTIMAL,
) -> PlacementSolution:
    """Channel quantities of the placement ``coord``."""
    pos = to_cartesian(cfg, coord)
    return PlacementSolution(
        coord=coord,
        position=pos,
        p_los=channel.los_probability(pos, env),
        range_r=channel.distance(pos),
        pl_db=channel.path_loss(pos, env, mode),
        regime=regime(cfg),
        kind=kind,
        mode=mode,
    )


def _pl_tether(cfg: PlacementConfig, t, theta, env: Environment, mode: PathLossMode):
    x = cfg.d - t * np.cos(theta)
    z = cfg.h_b + t * np.sin(theta)
    return channel.path_loss_xyz(x, np.zeros_like(x), z, env, mode)


def solve(cfg: PlacementConfig, env: Environment, mode: PathLossMode = PathLossMode.LINEAR) -> PlacementSolution:
    """Minimum average path-loss placement."""
    bounds = opt_bounds(cfg)
    if bounds.free_variable is FreeVariable.TETHER_LENGTH:
        theta = bounds.fixed_value
        f = lambda t: _pl_tether(cfg, t, np.full_like(t, theta), env, mode)  # noqa: E731
        tol = T_TOL
    else:
        t_fixed = bounds.fixed_value
        f = lambda th: _pl_tether(cfg, np.full_like(th, t_fixed), th, env, mode)  # noqa: E731
        tol = THETA_TOL
    best, _ = scan_minimize(f, bounds.lower, bounds.upper, tol, N_SCAN)
    return evaluate(cfg, bounds.coord(best), env, mode)


def suboptimal_coord(cfg: PlacementConfig) -> TetherCoord:
    """Placement maximizing the LoS probability inside the optimal-search bounds."""
    reg = regime(cfg)
    if reg is Regime.NEAR_FIELD:
        return TetherCoord(cfg.d / math.cos(cfg.theta_min), cfg.theta_min)
    if reg is Regime.MID_FIELD:
        return TetherCoord(cfg.t_max, cfg.theta_min)
    return TetherCoord(cfg.t_max, max(critical_theta(cfg, cfg.t_max), cfg.theta_min))


def suboptimal_closed_form(
    cfg: PlacementConfig, env: Environment, mode: PathLossMode = PathLossMode.LINEAR
) -> ClosedForm:
    h, d, T, th = cfg.h_b, cfg.d, cfg.t_max, cfg.theta_min
    reg = regime(cfg)
    if reg is Regime.NEAR_FIELD:
        elevation = 90.0
        r = h + d * math.tan(th)
    elif reg is Regime.MID_FIELD:
        elevation = math.degrees(math.atan2(h + T * math.sin(th), d - T * math.cos(th)))
        r = math.sqrt(h * h + d * d + T * T - 2 * d * T * math.cos(th) + 2 * h * T * math.sin(th))
    else:
        s = math.sqrt(h * h + d * d - T * T)
        elevation = math.degrees(math.atan2(h * s + d * T, d * s - h * T))
        r = s
    p = float(channel.los_probability_from_elevation(elevation, env))
    return ClosedForm(p, r, float(channel.path_loss_from_range(r, p, env, mode)))


def suboptimal(cfg: PlacementConfig, env: Environment, mode: PathLossMode = PathLossMode.LINEAR) -> PlacementSolution:
    sol = evaluate(cfg, suboptimal_coord(cfg), env, mode, SolutionKind.SUBOPTIMAL)
    cf = suboptimal_closed_form(cfg, env, mode)
    if not (
        math.isclose(cf.p_los, sol.p_los, rel_tol=1e-9, abs_tol=1e-12)
        and math.isclose(cf.range_r, sol.range_r, rel_tol=1e-9)
    ):
        raise RuntimeError(f"closed-form suboptimal values {cf} disagree with the channel model at {sol.position}")
    return sol


def bounds_endpoint_pl(
    cfg: PlacementConfig, env: Environment, mode: PathLossMode = PathLossMode.LINEAR
) -> tuple[float, float]:
    """Path-loss at the lower and upper end of :func:`opt_bounds`."""
    b = opt_bounds(cfg)
    return (evaluate(cfg, b.coord(b.lower), env, mode).pl_db, evaluate(cfg, b.coord(b.upper), env, mode).pl_db)


# -- brute-force oracle -------------------------------------------------------

def _grid_values(cfg, ts, thetas, env, mode):
    t = ts[:, None]
    th = thetas[None, :]
    values = _pl_tether(cfg, t, th, env, mode)
    feasible = t * np.cos(th) <= cfg.d + FEASIBILITY_RTOL * max(1.0, cfg.d)
    return np.where(feasible, values, np.inf)


def _tiebreak_argmin(values: np.ndarray) -> tuple[int, int]:
    vmin = values.min()
    flat = int(np.flatnonzero(values.ravel() <= vmin + TIE_DB)[0])
    return np.unravel_index(flat, values.shape)


def brute_force(
    cfg: PlacementConfig,
    env: Environment,
    mode: PathLossMode = PathLossMode.LINEAR,
    grid_n: int = 400,
    workers: int | None = 1,
) -> PlacementSolution:
    """Exhaustive grid minimum over ``[0, T_max] x [theta_min, pi/2]`` plus one local refinement.

    Ties within 1e-12 dB go to the smallest ``t``, then the smallest ``theta``.
    Rows are evaluated in blocks (possibly in parallel) and concatenated in
    order, so the result does not depend on ``workers``.
    """
    if grid_n < 100:
        raise ValueError("grid_n must be at least 100")
    ts = np.linspace(0.0, cfg.t_max, grid_n)
    thetas = np.linspace(cfg.theta_min, HALF_PI, grid_n)
    blocks = np.array_split(np.arange(grid_n), max(1, min(grid_n, 8)))
    parts = ordered_map(lambda idx: _grid_values(cfg, ts[idx], thetas, env, mode), blocks, workers)
    values = np.vstack(parts)
    i, j = _tiebreak_argmin(values)
    best_t, best_th, best_v = ts[i], thetas[j], values[i, j]

    dt = cfg.t_max / (grid_n - 1)
    dth = (HALF_PI - cfg.theta_min) / (grid_n - 1)
    ft = np.clip(np.linspace(best_t - dt, best_t + dt, 21), 0.0, cfg.t_max)
    fth = np.clip(np.linspace(best_th - dth, best_th + dth, 21), cfg.theta_min, HALF_PI)
    fine = _grid_values(cfg, ft, fth, env, mode)
    fi, fj = _tiebreak_argmin(fine)
    if fine[fi, fj] < best_v:
        best_t, best_th = ft[fi], fth[fj]
    return evaluate(cfg, TetherCoord(float(best_t), float(best_th)), env, mode, SolutionKind.BRUTE_FORCE)


def in_boundary_set(cfg: PlacementConfig, coord: TetherCoord, t_tol: float, theta_tol: float) -> bool:
    """Whether ``coord`` lies, within tolerances, on the boundary sets holding the optimum.

    Beyond ``T_max cos(theta_min)`` the optimum has a fully extended tether or the
    minimum inclination. Closer in, it has the minimum inclination and
    ``t <= d / cos(theta_min)``.
    """
    at_theta_min = abs(coord.theta - cfg.theta_min) <= theta_tol
    if cfg.d > cfg.t_max * math.cos(cfg.theta_min):
        return at_theta_min or abs(coord.t - cfg.t_max) <= t_tol
    return at_theta_min and coord.t <= cfg.d / math.cos(cfg.theta_min) + t_tol


__all__ = [
    "ClosedForm",
    "FreeVariable",
    "OptBounds",
    "PlacementSolution",
    "SolutionKind",
    "bounds_endpoint_pl",
    "brute_force",
    "critical_t",
    "critical_theta",
    "evaluate",
    "in_boundary_set",
    "opt_bounds",
    "solve",
    "suboptimal",
    "suboptimal_closed_form",
    "suboptimal_coord",
    "threshold_f",
]
