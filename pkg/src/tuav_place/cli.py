"""Command-line front end.

Exit status: 0 on success, 2 on a malformed config/spec, 3 on an invariant
violation (for example ``theta_min_deg >= 90``).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import __version__
from .channel import PathLossMode
from .config import ConfigParseError, RunConfig, SweepSpec
from .experiments import RunManifest, run_sweep, run_theta_min, write_text
from .geometry import ConfigError, threshold_f
from .optimizer import opt_bounds, solve, suboptimal, suboptimal_closed_form

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--mode", choices=["linear", "additive-db"], default=default(None),
                        help="path-loss combination (overrides pathloss_mode in the config)")
    parser.add_argument("--out", type=Path, default=default(Path(".")),
                        help="output directory for CSV files (default: current directory)")
    parser.add_argument("--seed", type=int, default=default(0), help="Monte Carlo seed (default: 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tuav-place", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)

    for name, help_text in [
        ("solve", "optimal placement as JSON"),
        ("bounds", "search bounds of the optimal placement as JSON"),
        ("suboptimal", "closed-form LoS-maximizing placement as JSON"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("config", type=Path)

    p = sub.add_parser("sweep", parents=[common], help="sweep d, theta_min_deg or t_max and write a CSV")
    p.add_argument("spec", type=Path)

    p = sub.add_parser("theta-min", parents=[common], help="CDF and mean of the minimum inclination angle")
    p.add_argument("config", type=Path)
    p.add_argument("--samples", type=int, default=0, help="Monte Carlo samples (0 = analytic only)")
    p.add_argument("--grid", type=int, default=90, help="number of angles in [0, 90] degrees")
    return parser


def _load(path: Path, mode: str | None) -> RunConfig:
    cfg = RunConfig.load(path)
    if mode is not None:
        cfg = cfg.with_value("pathloss_mode", mode)
    return cfg


def _print_json(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_solve(args) -> int:
    cfg = _load(args.config, args.mode)
    _print_json(solve(cfg.placement(), cfg.environment(), cfg.mode()).to_dict())
    return EXIT_OK


def cmd_suboptimal(args) -> int:
    cfg = _load(args.config, args.mode)
    placement, env, mode = cfg.placement(), cfg.environment(), cfg.mode()
    payload = suboptimal(placement, env, mode).to_dict()
    cf = suboptimal_closed_form(placement, env, mode)
    payload.update(closed_form_p_los=cf.p_los, closed_form_r_m=cf.range_r, closed_form_pl_db=cf.pl_db)
    _print_json(payload)
    return EXIT_OK


def cmd_bounds(args) -> int:
    cfg = _load(args.config, args.mode)
    placement = cfg.placement()
    b = opt_bounds(placement)
    t_lo, t_hi = b.t_range
    th_lo, th_hi = b.theta_range
    _print_json({
        "regime": b.regime.value,
        "free_variable": b.free_variable.value,
        "threshold_f_m": threshold_f(placement),
        "t_lower_m": t_lo,
        "t_upper_m": t_hi,
        "theta_lower_deg": math.degrees(th_lo),
        "theta_upper_deg": math.degrees(th_hi),
    })
    return EXIT_OK


def cmd_sweep(args) -> int:
    started = time.perf_counter()
    cfg = _load(args.spec, args.mode)
    spec = SweepSpec.from_config(cfg)
    text = run_sweep(spec)
    args.out.mkdir(parents=True, exist_ok=True)
    path = args.out / f"sweep_{spec.variable}.csv"
    write_text(path, text)
    manifest = RunManifest("sweep", cfg.snapshot(), outputs=[str(path)],
                           wall_clock_s=time.perf_counter() - started)
    manifest.write(args.out / f"sweep_{spec.variable}.manifest.json")
    print(path)
    return EXIT_OK


def cmd_theta_min(args) -> int:
    started = time.perf_counter()
    cfg = _load(args.config, args.mode)
    if args.samples < 0 or args.grid < 2:
        raise ConfigError("--samples must be >= 0 and --grid >= 2")
    text, mean_deg = run_theta_min(cfg, grid=args.grid, samples=args.samples, seed=args.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    env_name = cfg.environment().name
    path = args.out / f"theta_min_{env_name}.csv"
    write_text(path, text)
    manifest = RunManifest("theta-min", cfg.snapshot(), seed=args.seed if args.samples else None,
                           outputs=[str(path)], wall_clock_s=time.perf_counter() - started)
    manifest.write(args.out / f"theta_min_{env_name}.manifest.json")
    _print_json({"csv": str(path), "mean_theta_min_deg": mean_deg})
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "bounds": cmd_bounds,
    "suboptimal": cmd_suboptimal,
    "sweep": cmd_sweep,
    "theta-min": cmd_theta_min,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.mode is not None:
        args.mode = PathLossMode.parse(args.mode).value
    try:
        return COMMANDS[args.command](args)
    except ConfigParseError as exc:
        print(f"tuav-place: error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConfigError as exc:
        print(f"tuav-place: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
