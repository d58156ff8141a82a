"""Placement of tethered UAV base stations and the distribution of the minimum tether inclination."""

__version__ = "0.1.0"

from .channel import (  # noqa: E402
    PRESETS,
    Environment,
    PathLossMode,
    Point3,
    distance,
    elevation_angle_deg,
    get_environment,
    los_probability,
    path_loss,
)
from .geometry import (  # noqa: E402
    ConfigError,
    PlacementConfig,
    Regime,
    TetherCoord,
    in_hovering_region,
    is_feasible,
    regime,
    threshold_f,
    to_cartesian,
)
from .optimizer import (  # noqa: E402
    OptBounds,
    PlacementSolution,
    brute_force,
    critical_t,
    critical_theta,
    opt_bounds,
    solve,
    suboptimal,
)
from .theta_min import CityModel, cdf_theta_min, mean_theta_min, sample_theta_min_cdf  # noqa: E402
