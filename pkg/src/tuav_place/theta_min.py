"""Distribution of the minimum safe tether inclination over a Poisson building field.

Buildings around the rooftop form a Poisson point process of density ``beta``
(per km^2) with i.i.d. heights of CDF ``1 - exp(-h^2 / gamma^2)``. An
inclination ``theta`` is safe when every building at horizontal range
``L <= T_max cos(theta)`` is lower than ``h_b + L tan(theta)``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import integrate, special

from ._parallel import ordered_map
from .channel import Environment
from .geometry import HALF_PI, ConfigError

SMALL_THETA = 1e-6  # below this the closed form is replaced by its theta -> 0 limit
SERIES_THETA = 1e-2  # below this the bracket is integrated directly (first-order terms cancel)
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
CHUNK_SIZE = 4096  # samples per RNG stream; fixed so results do not depend on parallelism


@dataclass(frozen=True)
class CityModel:
    beta: float  # buildings per km^2
    gamma: float  # m
    h_b: float  # m
    t_max: float  # m

    def __post_init__(self) -> None:
        if not (self.beta > 0 and self.gamma > 0 and self.t_max > 0 and self.h_b >= 0):
            raise ConfigError(f"invalid city model {self}")

    @property
    def density_m2(self) -> float:
        return self.beta / 1e6

    @classmethod
    def from_environment(cls, env: Environment, h_b: float | None = None, t_max: float = 150.0) -> CityModel:
        """City of ``env``; the rooftop height defaults to the height scale ``gamma``."""
        return cls(env.beta, env.gamma, env.gamma if h_b is None else h_b, t_max)


@dataclass(frozen=True)
class EmpiricalCdf:
    thetas: np.ndarray
    probs: np.ndarray
    n_samples: int
    seed: int


def lower_incomplete_gamma_half(x):
    """Lower incomplete gamma function of order 1/2 (not regularized)."""
    return math.sqrt(math.pi) * special.erf(np.sqrt(x))


def _bracket(city: CityModel, top):
    g, hb = city.gamma, city.h_b
    return g * (math.exp(-(hb / g) ** 2) - np.exp(-(top / g) ** 2)) - hb * (
        lower_incomplete_gamma_half((top / g) ** 2) - lower_incomplete_gamma_half((hb / g) ** 2)
    )


def _bracket_by_quadrature(city: CityModel, top):
    # Same quantity as (2/gamma) * integral_{h_b}^{top} (u - h_b) exp(-u^2/gamma^2) du.
    top = np.asarray(top, dtype=float)[..., None]
    half = 0.5 * (top - city.h_b)
    u = city.h_b + half * (_GL_NODES + 1.0)
    integrand = (u - city.h_b) * np.exp(-((u / city.gamma) ** 2))
    return (2.0 / city.gamma) * half[..., 0] * (integrand @ _GL_WEIGHTS)


def cdf_theta_min(city: CityModel, theta):
    """P(theta_min <= theta); accepts scalars or arrays of angles in radians."""
    theta = np.asarray(theta, dtype=float)
    lam = math.pi * city.density_m2
    g, hb, T = city.gamma, city.h_b, city.t_max

    th = np.clip(theta, SMALL_THETA, HALF_PI)
    top = hb + T * np.sin(th)
    bracket = np.where(th < SERIES_THETA, _bracket_by_quadrature(city, top), _bracket(city, top))
    with np.errstate(over="ignore", divide="ignore"):
        exponent = -lam * g * bracket / np.tan(th) ** 2
    value = np.exp(np.minimum(exponent, 0.0))

    limit0 = math.exp(-lam * T * T * math.exp(-(hb / g) ** 2))
    value = np.where(theta < SMALL_THETA, limit0, value)
    value = np.where(theta >= HALF_PI, 1.0, value)
    return value if value.ndim else float(value)


def mean_theta_min(city: CityModel) -> float:
    """Expected minimum inclination in radians, integral of 1 - F over [0, pi/2]."""
    value, _ = integrate.quad(lambda th: 1.0 - cdf_theta_min(city, th), 0.0, HALF_PI, epsabs=1e-6, limit=200)
    return value


def draw_buildings(city: CityModel, seed: int, chunk: int, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Buildings within ``T_max`` of the rooftop for ``n`` samples of one chunk.

    Returns per-sample counts and the concatenated ranges and heights. Only the
    range to the rooftop matters, so the azimuth of each building is not drawn.
    """
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(chunk,))))
    counts = rng.poisson(city.density_m2 * math.pi * city.t_max ** 2, size=n)
    total = int(counts.sum())
    ranges = city.t_max * np.sqrt(rng.random(total))
    heights = rng.rayleigh(scale=city.gamma / math.sqrt(2.0), size=total)
    return counts, ranges, heights


def _chunk_critical_angles(city: CityModel, seed: int, chunk: int, n: int) -> np.ndarray:
    counts, ranges, heights = draw_buildings(city, seed, chunk, n)
    # Building i rules out every theta <= min(acos(L/T), atan((h - h_b)/L)).
    reach = np.arccos(np.minimum(ranges / city.t_max, 1.0))
    clearance = np.arctan2(heights - city.h_b, ranges)
    per_building = np.minimum(reach, clearance)

    crit = np.full(n, -np.inf)
    nonempty = counts > 0
    if ranges.size:
        starts = np.concatenate(([0], np.cumsum(counts)[:-1]))[nonempty]
        crit[nonempty] = np.maximum.reduceat(per_building, starts)
    return crit


def sample_critical_angles(
    city: CityModel, n_samples: int, seed: int, workers: int | None = None
) -> np.ndarray:
    """One realization per sample of the largest unsafe inclination (``-inf`` if none).

    The sample satisfies ``theta_min <= theta`` exactly when its value is below
    ``theta``. Samples are drawn in fixed chunks, each with its own Philox
    stream keyed by ``(seed, chunk index)``, so the output is bit-identical for
    any worker count.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    jobs = [(k, min(CHUNK_SIZE, n_samples - start)) for k, start in enumerate(range(0, n_samples, CHUNK_SIZE))]
    parts = ordered_map(lambda job: _chunk_critical_angles(city, seed, *job), jobs, workers)
    return np.concatenate(parts)


def sample_theta_min_cdf(
    city: CityModel, thetas, n_samples: int, seed: int, workers: int | None = None
) -> EmpiricalCdf:
    thetas = np.asarray(thetas, dtype=float)
    if thetas.size == 0:
        raise ValueError("theta grid is empty")
    if thetas.min() < 0.0 or thetas.max() > HALF_PI + 1e-12:
        raise ValueError("theta grid must lie within [0, pi/2]")
    crit = np.sort(sample_critical_angles(city, n_samples, seed, workers))
    probs = np.searchsorted(crit, thetas, side="left") / n_samples
    return EmpiricalCdf(thetas=thetas, probs=probs, n_samples=n_samples, seed=seed)


def write_cdf_csv(path: str | Path, thetas, probs) -> None:
    """Two-column CSV ``theta_deg,probability``."""
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["theta_deg", "probability"])
        for th, p in zip(np.degrees(thetas), probs):
            writer.writerow([f"{th:.9g}", f"{p:.9g}"])
