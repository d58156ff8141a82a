"""Problem instance, hovering region and tether <-> Cartesian conversions.

The ground station sits on a rooftop at ``(d, 0, h_b)``; the receiver is at the
origin. A tether of length ``t`` inclined at ``theta`` (radians, measured from
the horizontal, pointing towards the receiver) puts the TUAV at
``(d - t cos(theta), 0, h_b + t sin(theta))``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .channel import Point3

# Single tolerance for every feasibility comparison (lengths in m, angles in rad).
FEASIBILITY_RTOL = 1e-9

HALF_PI = 0.5 * math.pi


class ConfigError(ValueError):
    """A placement or city configuration violates its invariants."""


def _leq(a: float, b: float) -> bool:
    return a <= b + FEASIBILITY_RTOL * max(1.0, abs(a), abs(b))


@dataclass(frozen=True)
class PlacementConfig:
    h_b: float
    d: float
    t_max: float
    theta_min: float  # radians

    def __post_init__(self) -> None:
        if not self.h_b > 0:
            raise ConfigError(f"h_b must be positive, got {self.h_b}")
        if not self.d >= 0:
            raise ConfigError(f"d must be non-negative, got {self.d}")
        if not self.t_max > 0:
            raise ConfigError(f"t_max must be positive, got {self.t_max}")
        if not 0.0 <= self.theta_min < HALF_PI:
            raise ConfigError(
                f"theta_min must lie in [0, 90) degrees, got {math.degrees(self.theta_min):g} degrees"
            )

    @classmethod
    def from_degrees(cls, h_b: float, d: float, t_max: float, theta_min_deg: float) -> PlacementConfig:
        return cls(h_b=h_b, d=d, t_max=t_max, theta_min=math.radians(theta_min_deg))

    def replace(self, **changes) -> PlacementConfig:
        values = dict(h_b=self.h_b, d=self.d, t_max=self.t_max, theta_min=self.theta_min)
        values.update(changes)
        return PlacementConfig(**values)


@dataclass(frozen=True)
class TetherCoord:
    t: float
    theta: float  # radians


class Regime(enum.Enum):
    NEAR_FIELD = "near-field"  # d <= T_max cos(theta_min)
    MID_FIELD = "mid-field"  # T_max cos(theta_min) < d < F
    FAR_FIELD = "far-field"  # d >= F


def to_cartesian(cfg: PlacementConfig, c: TetherCoord) -> Point3:
    return Point3(cfg.d - c.t * math.cos(c.theta), 0.0, cfg.h_b + c.t * math.sin(c.theta))


def to_tether(cfg: PlacementConfig, p: Point3) -> TetherCoord:
    """Inverse of :func:`to_cartesian` after projecting ``p`` onto ``y = 0``."""
    dx = cfg.d - p.x
    dz = p.z - cfg.h_b
    t = math.hypot(dx, dz)
    theta = math.atan2(dz, dx) if t > 0.0 else HALF_PI
    return TetherCoord(t, theta)


def is_feasible(cfg: PlacementConfig, c: TetherCoord) -> bool:
    """Constraints of the reduced (t, theta) problem."""
    return (
        _leq(cfg.theta_min, c.theta)
        and _leq(c.theta, HALF_PI)
        and _leq(c.t * math.cos(c.theta), cfg.d)
        and _leq(0.0, c.t)
        and _leq(c.t, cfg.t_max)
    )


def tether_length(cfg: PlacementConfig, p: Point3) -> float:
    return math.sqrt((p.x - cfg.d) ** 2 + p.y ** 2 + (p.z - cfg.h_b) ** 2)


def in_hovering_region(cfg: PlacementConfig, p: Point3) -> bool:
    length = tether_length(cfg, p)
    if length <= FEASIBILITY_RTOL * max(1.0, cfg.t_max):
        return True  # tether fully retracted
    if not _leq(length, cfg.t_max):
        return False
    # asin((z - h_b) / length) >= theta_min, compared on lengths to stay well conditioned.
    return _leq(length * math.sin(cfg.theta_min), p.z - cfg.h_b)


def threshold_f(cfg: PlacementConfig) -> float:
    """Distance beyond which the optimal tether is fully extended."""
    return cfg.t_max / math.cos(cfg.theta_min) + cfg.h_b * math.tan(cfg.theta_min)


def regime(cfg: PlacementConfig) -> Regime:
    if cfg.d <= cfg.t_max * math.cos(cfg.theta_min):
        return Regime.NEAR_FIELD
    if cfg.d < threshold_f(cfg):
        return Regime.MID_FIELD
    return Regime.FAR_FIELD
