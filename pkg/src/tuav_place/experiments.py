"""Parameter sweeps and the theta_min distribution table, written as plot-ready CSV."""

from __future__ import annotations

import io
import json
import math
import platform
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from ._parallel import ordered_map
from .config import RunConfig, SweepSpec
from .optimizer import bounds_endpoint_pl, opt_bounds, solve, suboptimal
from .theta_min import cdf_theta_min, mean_theta_min, sample_theta_min_cdf

SWEEP_COLUMNS = [
    "regime",
    "opt_t_m", "opt_theta_deg", "opt_pl_db",
    "sub_t_m", "sub_theta_deg", "sub_pl_db", "gap_db",
    "t_lower_m", "t_upper_m", "theta_lower_deg", "theta_upper_deg",
    "pl_lower_db", "pl_upper_db",
]


def fmt(value) -> str:
    if isinstance(value, str):
        return value
    return format(float(value), ".9g")


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def sweep_row(cfg: RunConfig) -> list:
    placement = cfg.placement()
    env = cfg.environment()
    mode = cfg.mode()
    opt = solve(placement, env, mode)
    sub = suboptimal(placement, env, mode)
    bounds = opt_bounds(placement)
    pl_lo, pl_hi = bounds_endpoint_pl(placement, env, mode)
    t_lo, t_hi = bounds.t_range
    th_lo, th_hi = bounds.theta_range
    return [
        opt.regime.value,
        opt.coord.t, math.degrees(opt.coord.theta), opt.pl_db,
        sub.coord.t, math.degrees(sub.coord.theta), sub.pl_db, sub.pl_db - opt.pl_db,
        t_lo, t_hi, math.degrees(th_lo), math.degrees(th_hi),
        pl_lo, pl_hi,
    ]


def run_sweep(spec: SweepSpec, workers: int | None = None) -> str:
    """CSV text of the sweep: one row per value of the swept variable."""
    values = spec.values()
    # Validate every point up front so a bad value fails before any work is done.
    configs = [spec.fixed.with_value(spec.variable, v) for v in values]
    for c in configs:
        c.placement()
        c.environment()
    rows = ordered_map(sweep_row, configs, workers)
    return _csv_text([spec.variable] + SWEEP_COLUMNS, [[v] + r for v, r in zip(values, rows)])


def run_theta_min(
    cfg: RunConfig, grid: int = 90, samples: int = 0, seed: int = 0, workers: int | None = None
) -> tuple[str, float]:
    """CSV text of the analytic (and optionally empirical) CDF, and the mean in degrees."""
    if grid < 2:
        raise ValueError("grid needs at least 2 points")
    city = cfg.city()
    thetas = np.linspace(0.0, 0.5 * math.pi, grid)
    analytic = cdf_theta_min(city, thetas)
    header = ["theta_deg", "F_analytic"]
    columns = [np.degrees(thetas), analytic]
    if samples > 0:
        empirical = sample_theta_min_cdf(city, thetas, samples, seed, workers)
        header.append("F_empirical")
        columns.append(empirical.probs)
    mean_deg = math.degrees(mean_theta_min(city))
    text = _csv_text(header, [list(r) for r in zip(*columns)])
    text += f"# mean_theta_min_deg,{fmt(mean_deg)}\n"
    return text, mean_deg


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: int | None = None
    outputs: list[str] = field(default_factory=list)
    wall_clock_s: float = 0.0
    version: str = __version__
    started_at: float = field(default_factory=time.time)

    def write(self, path: Path) -> None:
        payload = {
            "tool": "tuav-place",
            "version": self.version,
            "python": platform.python_version(),
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "outputs": self.outputs,
            "started_at_unix": self.started_at,
            "wall_clock_s": self.wall_clock_s,
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_text(path: Path, text: str) -> None:
    with open(path, "w", newline="\n") as f:
        f.write(text)
