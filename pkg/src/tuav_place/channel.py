"""Air-to-ground channel: elevation angle, LoS probability and average path-loss.

The receiver sits at the origin. Path-loss values are relative: no carrier
frequency constant is added, so only differences and orderings are meaningful.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

LOS_ANGLE_OFFSET_DEG = 15.0


class ChannelError(ValueError):
    """Raised for geometrically undefined channel queries (e.g. a TUAV at the receiver)."""


@dataclass(frozen=True)
class Point3:
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


class PathLossMode(enum.Enum):
    """How LoS/NLoS excess losses combine with distance spreading.

    ``LINEAR`` averages ``R^2 * eta`` in linear scale and converts the mean to dB.
    ``ADDITIVE_DB`` averages the excess losses in dB on top of ``20 log10 R``.
    """

    LINEAR = "linear"
    ADDITIVE_DB = "additive-db"

    @classmethod
    def parse(cls, value: str | PathLossMode) -> PathLossMode:
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {"linear": cls.LINEAR, "lineareq2": cls.LINEAR, "lin": cls.LINEAR,
                   "additive-db": cls.ADDITIVE_DB, "additive": cls.ADDITIVE_DB,
                   "additivedb": cls.ADDITIVE_DB, "db": cls.ADDITIVE_DB}
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown path-loss mode {value!r}") from None


@dataclass(frozen=True)
class Environment:
    """Channel and city parameters of a propagation environment.

    ``beta`` is the building density in buildings per km^2 and ``gamma`` the
    building height scale in meters.
    """

    name: str
    a: float
    b: float
    eta_los_db: float
    eta_nlos_db: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        for field in ("a", "b", "beta", "gamma"):
            if not getattr(self, field) > 0:
                raise ValueError(f"Environment.{field} must be positive, got {getattr(self, field)}")
        if not self.eta_los_db < self.eta_nlos_db:
            raise ValueError("eta_los_db must be smaller than eta_nlos_db")

    @property
    def eta_los(self) -> float:
        return db_to_linear(self.eta_los_db)

    @property
    def eta_nlos(self) -> float:
        return db_to_linear(self.eta_nlos_db)


# Only the dense-urban channel constants are known; the other presets reuse them
# and differ in their building statistics (beta, gamma).
_DENSE_URBAN_CHANNEL = dict(a=0.37, b=0.21, eta_los_db=1.6, eta_nlos_db=23.0)

PRESETS: dict[str, Environment] = {
    "suburban": Environment("suburban", beta=750.0, gamma=8.0, **_DENSE_URBAN_CHANNEL),
    "urban": Environment("urban", beta=500.0, gamma=15.0, **_DENSE_URBAN_CHANNEL),
    "dense-urban": Environment("dense-urban", beta=300.0, gamma=20.0, **_DENSE_URBAN_CHANNEL),
    "high-rise-urban": Environment("high-rise-urban", beta=300.0, gamma=50.0, **_DENSE_URBAN_CHANNEL),
}


def get_environment(name: str) -> Environment:
    key = name.strip().lower().replace("_", "-").replace(" ", "-")
    if key in ("highrise-urban", "high-rise", "highrise"):
        key = "high-rise-urban"
    if key not in PRESETS:
        raise ValueError(f"unknown environment {name!r}; choose from {sorted(PRESETS)}")
    return PRESETS[key]


def db_to_linear(value_db):
    return 10.0 ** (value_db / 10.0)


def linear_to_db(value):
    return 10.0 * np.log10(value)


# -- vectorized kernels ------------------------------------------------------

def elevation_deg_xyz(x, y, z):
    """Elevation angle in degrees at the origin, element-wise."""
    return np.degrees(np.arctan2(z, np.hypot(x, y)))


def los_probability_from_elevation(phi_deg, env: Environment):
    """``a * (phi - 15)^b`` with the base clamped at zero and the result at one."""
    base = np.clip(np.asarray(phi_deg, dtype=float) - LOS_ANGLE_OFFSET_DEG, 0.0, None)
    return np.clip(env.a * base ** env.b, 0.0, 1.0)


def path_loss_from_range(r, p_los, env: Environment, mode: PathLossMode = PathLossMode.LINEAR):
    """Average path-loss in dB for range ``r`` (m) and LoS probability ``p_los``."""
    r = np.asarray(r, dtype=float)
    p_los = np.asarray(p_los, dtype=float)
    if mode is PathLossMode.LINEAR:
        excess = p_los * env.eta_los + (1.0 - p_los) * env.eta_nlos
        return 10.0 * np.log10(r * r * excess)
    return 20.0 * np.log10(r) + p_los * env.eta_los_db + (1.0 - p_los) * env.eta_nlos_db


def path_loss_xyz(x, y, z, env: Environment, mode: PathLossMode = PathLossMode.LINEAR):
    """Average path-loss in dB for TUAV positions given by coordinate arrays."""
    p_los = los_probability_from_elevation(elevation_deg_xyz(x, y, z), env)
    return path_loss_from_range(np.sqrt(x * x + y * y + z * z), p_los, env, mode)


# -- point API ---------------------------------------------------------------

def elevation_angle_deg(p: Point3) -> float:
    if p.x == 0.0 and p.y == 0.0 and p.z == 0.0:
        raise ChannelError("elevation angle is undefined at the receiver location")
    return math.degrees(math.atan2(p.z, math.hypot(p.x, p.y)))


def distance(p: Point3) -> float:
    return math.sqrt(p.x * p.x + p.y * p.y + p.z * p.z)


def los_probability(p: Point3, env: Environment) -> float:
    return float(los_probability_from_elevation(elevation_angle_deg(p), env))


def path_loss(p: Point3, env: Environment, mode: PathLossMode = PathLossMode.LINEAR) -> float:
    r = distance(p)
    if r == 0.0:
        raise ChannelError("path-loss is undefined at zero range")
    return float(path_loss_from_range(r, los_probability(p, env), env, mode))
