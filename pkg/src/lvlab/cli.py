"""Command-line front end.

Subcommands:
  simulate      run one scheme and write the trajectory CSV + JSON report
  analyze       simulate and run selected analyses (stability, direction,
                positivity, closure, overlay vs an RK4 reference)
  preset NAME   run a bundled figure-reproduction preset
  list-presets  show available presets

Exit status: 0 on success, 2 invalid configuration, 3 the simulation
diverged and was truncated (outputs are still written), 4 I/O failure.
The default output directory is $LV_OUT_DIR (falling back to ./out);
--out overrides it.
"""
from __future__ import annotations

import argparse
import os
import sys

from .model import ModelParams, State
from .presets import ANALYSES, PRESETS, ConfigError, Scenario, run_preset, run_scenario
from .schemes import PHI_FUNCTIONS, SCHEMES
from .version import __version__

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DIVERGED = 3
EXIT_IO = 4


def _add_scenario_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--scheme", required=True, choices=SCHEMES)
    sub.add_argument("--alpha", type=float, required=True, help="prey growth rate")
    sub.add_argument("--beta", type=float, required=True, help="predation rate")
    sub.add_argument("--gamma", type=float, required=True, help="conversion rate")
    sub.add_argument("--delta", type=float, required=True, help="predator death rate")
    sub.add_argument("--h", type=float, required=True, help="step size")
    sub.add_argument("--phi", choices=sorted(PHI_FUNCTIONS), default="identity",
                     help="denominator function for the mickens scheme")
    sub.add_argument("--x0", type=float, required=True, help="initial prey density")
    sub.add_argument("--y0", type=float, required=True, help="initial predator density")
    sub.add_argument("--steps", type=int, required=True, help="number of steps")
    sub.add_argument("--name", default=None, help="scenario name (output file stem)")
    sub.add_argument("--out", default=None, help="output directory (default: $LV_OUT_DIR or ./out)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lvlab",
        description="Lotka-Volterra laboratory: simulate and analyze Euler, Mickens and RK4 runs.",
    )
    parser.add_argument("--version", action="version", version=f"lvlab {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    sim = subs.add_parser("simulate", help="run one scheme and write the trajectory")
    _add_scenario_args(sim)

    ana = subs.add_parser("analyze", help="simulate and run analyses")
    _add_scenario_args(ana)
    ana.add_argument("--stability", action="store_true", help="classify both fixed points")
    ana.add_argument("--direction", action="store_true", help="check the region sign table along the run")
    ana.add_argument("--positivity", action="store_true", help="locate negative excursions")
    ana.add_argument("--closure", action="store_true", help="measure orbit closure on a section")
    ana.add_argument("--overlay-ref", choices=["rk4"], default=None,
                     help="also run an RK4 reference and report overlay errors")
    ana.add_argument("--overlay-ref-h", type=float, default=None,
                     help="reference step size (default: h/100)")

    pre = subs.add_parser("preset", help="run a bundled preset")
    pre.add_argument("name", help="preset name (see list-presets)")
    pre.add_argument("--out", default=None, help="output directory (default: $LV_OUT_DIR or ./out)")

    subs.add_parser("list-presets", help="show available presets")
    return parser


def _out_dir(args) -> str:
    if getattr(args, "out", None):
        return args.out
    return os.environ.get("LV_OUT_DIR", "out")


def _scenario_from_args(args, analyses=frozenset(), overlay_ref_h=None) -> Scenario:
    try:
        params = ModelParams(args.alpha, args.beta, args.gamma, args.delta)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    name = args.name or f"{args.scheme}-run"
    return Scenario(
        name=name,
        params=params,
        scheme=args.scheme,
        h=args.h,
        start=State(args.x0, args.y0),
        n_steps=args.steps,
        phi=args.phi,
        analyses=frozenset(analyses),
        overlay_ref_h=overlay_ref_h,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "list-presets":
            for name in sorted(PRESETS):
                print(f"{name}: {PRESETS[name].description}")
            return EXIT_OK

        if args.command == "preset":
            reports = run_preset(args.name, _out_dir(args))
            diverged = False
            for rep in reports:
                status = f"diverged at step {rep.diverged_at}" if rep.diverged_at is not None else "ok"
                diverged = diverged or rep.diverged_at is not None
                print(f"{rep.scenario.name}: {rep.n_points} points, {status} -> {rep.trajectory_csv}")
            return EXIT_DIVERGED if diverged else EXIT_OK

        if args.command == "simulate":
            sc = _scenario_from_args(args)
        else:  # analyze
            analyses = {
                name
                for name in ("stability", "direction", "positivity", "closure")
                if getattr(args, name)
            }
            if args.overlay_ref:
                analyses.add("overlay")
            if not analyses:
                analyses = {"stability", "direction", "positivity", "closure"}
            sc = _scenario_from_args(args, analyses, args.overlay_ref_h)
        sc.validate()
        report = run_scenario(sc, _out_dir(args))
        if report.diverged_at is not None:
            print(
                f"{sc.name}: diverged at step {report.diverged_at}; "
                f"trajectory truncated to {report.n_points} points -> {report.trajectory_csv}",
                file=sys.stderr,
            )
            return EXIT_DIVERGED
        print(f"{sc.name}: {report.n_points} points -> {report.trajectory_csv}")
        return EXIT_OK
    except ConfigError as e:
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
