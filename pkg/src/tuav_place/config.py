"""Plain-text ``key = value`` configuration files.

One pair per line, ``#`` starts a comment, keys are case-insensitive. Angles
are given in degrees here and converted to radians for the library.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path

from .channel import Environment, PathLossMode, get_environment
from .geometry import ConfigError, PlacementConfig
from .theta_min import CityModel

SWEEP_VARIABLES = ("d", "theta_min_deg", "t_max")

_FLOAT_KEYS = {"h_b", "d", "t_max", "theta_min_deg", "a", "b", "eta_los_db", "eta_nlos_db",
               "beta", "gamma", "start", "stop"}
_INT_KEYS = {"steps"}
_STR_KEYS = {"environment", "pathloss_mode", "variable"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS

DEFAULTS = {"h_b": 30.0, "t_max": 150.0, "theta_min_deg": 0.0, "environment": "dense-urban",
            "pathloss_mode": "linear"}


class ConfigParseError(ValueError):
    """Malformed configuration text (bad syntax, unknown key, non-numeric value)."""


def parse_config_text(text: str, source: str = "<config>") -> dict:
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower()
        if key not in KNOWN_KEYS:
            raise ConfigParseError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigParseError(f"{source}:{lineno}: duplicate key {key!r}")
        if not value:
            raise ConfigParseError(f"{source}:{lineno}: empty value for {key!r}")
        try:
            if key in _FLOAT_KEYS:
                parsed = float(value)
                if not math.isfinite(parsed):
                    raise ValueError
                values[key] = parsed
            elif key in _INT_KEYS:
                values[key] = int(value)
            else:
                values[key] = value
        except ValueError:
            raise ConfigParseError(f"{source}:{lineno}: invalid value {value!r} for {key!r}") from None
    return values


@dataclass
class RunConfig:
    values: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | Path) -> RunConfig:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigParseError(f"cannot read {path}: {exc.strerror}") from None
        return cls(parse_config_text(text, str(path)))

    def get(self, key: str):
        if key in self.values:
            return self.values[key]
        if key in DEFAULTS:
            return DEFAULTS[key]
        raise ConfigParseError(f"missing required key {key!r}")

    def snapshot(self) -> dict:
        out = dict(DEFAULTS)
        out.update(self.values)
        return out

    def with_value(self, key: str, value) -> RunConfig:
        return RunConfig({**self.values, key: value})

    def environment(self) -> Environment:
        try:
            env = get_environment(self.get("environment"))
        except ValueError as exc:
            raise ConfigParseError(str(exc)) from None
        overrides = {k: self.values[k] for k in ("a", "b", "eta_los_db", "eta_nlos_db", "beta", "gamma")
                     if k in self.values}
        if not overrides:
            return env
        try:
            return dataclasses.replace(env, **overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def mode(self) -> PathLossMode:
        try:
            return PathLossMode.parse(self.get("pathloss_mode"))
        except ValueError as exc:
            raise ConfigParseError(str(exc)) from None

    def placement(self) -> PlacementConfig:
        return PlacementConfig.from_degrees(
            h_b=self.get("h_b"), d=self.get("d"), t_max=self.get("t_max"),
            theta_min_deg=self.get("theta_min_deg"),
        )

    def city(self) -> CityModel:
        """City around the rooftop; ``h_b`` defaults to the environment's height scale."""
        env = self.environment()
        return CityModel(beta=env.beta, gamma=env.gamma, h_b=self.values.get("h_b", env.gamma),
                         t_max=self.get("t_max"))


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    fixed: RunConfig

    def __post_init__(self) -> None:
        if self.variable not in SWEEP_VARIABLES:
            raise ConfigParseError(f"sweep variable must be one of {SWEEP_VARIABLES}, got {self.variable!r}")
        if self.steps < 2:
            raise ConfigError("sweep needs at least 2 steps")
        if not self.start < self.stop:
            raise ConfigError("sweep start must be smaller than stop")

    @classmethod
    def from_config(cls, cfg: RunConfig) -> SweepSpec:
        return cls(variable=str(cfg.get("variable")).lower(), start=cfg.get("start"), stop=cfg.get("stop"),
                   steps=cfg.get("steps"), fixed=cfg)

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.steps - 1)
        return [self.start + k * step for k in range(self.steps - 1)] + [self.stop]
