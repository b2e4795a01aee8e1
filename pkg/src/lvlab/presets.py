"""Scenario runner and bundled figure-reproduction presets.

A Scenario bundles one simulation configuration with the set of
analyses to run on it.  ``run_scenario`` simulates, analyzes, writes
``<name>.csv`` and ``<name>.json`` into the output directory and
returns the RunReport.  Presets pin the configurations behind the
bundled experiments; each runs in a few seconds on commodity hardware.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from pathlib import Path

from .diagnostics import (
    CONTINUOUS,
    DRIFT_THRESHOLD,
    INTERIOR_REGIONS,
    ClosureMetrics,
    OverlayResult,
    PositivityReport,
    check_direction,
    classify_region,
    compare_overlay,
    measure_closure,
    monitor_positivity,
)
from .model import ModelParams, State, fixed_points
from .reporting import emit_csv, emit_phase_svg, emit_report_json
from .schemes import (
    EULER,
    MICKENS,
    PHI_FUNCTIONS,
    RK4,
    SCHEMES,
    Trajectory,
    simulate,
)
from .stability import StabilityReport, classify_continuous, classify_euler, classify_mickens
from .version import __version__

SCHEMA_ID = "lvlab-run-report/1"

ANALYSES = frozenset({"stability", "direction", "positivity", "closure", "overlay"})

OVERLAY_TOLERANCE = 0.05
OVERLAY_TOLERANCE_NOTE = (
    "the 5% overlap threshold is a tool default for judging agreement, "
    "not a derived error bound"
)

MAX_VIOLATIONS_LISTED = 10


class ConfigError(ValueError):
    """An invalid scenario or preset configuration."""


@dataclass(frozen=True)
class Scenario:
    """One named simulation plus the analyses requested on it."""

    name: str
    params: ModelParams
    scheme: str
    h: float
    start: State
    n_steps: int
    phi: str = "identity"
    analyses: frozenset = frozenset()
    overlay_ref_h: float | None = None  # defaults to h/100 when overlay is requested

    def validate(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise ConfigError("scenario name must be a non-empty string")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}, expected one of {SCHEMES}")
        if not (isinstance(self.h, (int, float)) and math.isfinite(self.h) and self.h > 0):
            raise ConfigError(f"step size must be finite and > 0, got {self.h!r}")
        if not isinstance(self.n_steps, int) or self.n_steps < 1:
            raise ConfigError(f"n_steps must be an integer >= 1, got {self.n_steps!r}")
        if self.phi not in PHI_FUNCTIONS:
            raise ConfigError(
                f"unknown phi option {self.phi!r}, expected one of {sorted(PHI_FUNCTIONS)}"
            )
        x0, y0 = self.start
        if not (math.isfinite(x0) and math.isfinite(y0)):
            raise ConfigError(f"start must be finite, got ({x0}, {y0})")
        if self.scheme == MICKENS and (x0 < 0 or y0 < 0):
            raise ConfigError(f"mickens requires a non-negative start, got ({x0}, {y0})")
        unknown = set(self.analyses) - ANALYSES
        if unknown:
            raise ConfigError(f"unknown analyses {sorted(unknown)}, expected subset of {sorted(ANALYSES)}")
        if {"closure", "overlay"} & set(self.analyses):
            fp = fixed_points(self.params).coexistence
            if not (x0 > 0 and y0 > 0):
                raise ConfigError("closure/overlay analyses need a start inside the open quadrant")
            if math.hypot(x0 - fp.x, y0 - fp.y) <= 1e-6:
                raise ConfigError("closure/overlay analyses need a start away from the coexistence point")
        if self.overlay_ref_h is not None and not (
            isinstance(self.overlay_ref_h, (int, float))
            and math.isfinite(self.overlay_ref_h)
            and self.overlay_ref_h > 0
        ):
            raise ConfigError(f"overlay_ref_h must be finite and > 0, got {self.overlay_ref_h!r}")

    def to_json_dict(self) -> dict:
        p = self.params
        return {
            "name": self.name,
            "params": {"alpha": p.alpha, "beta": p.beta, "gamma": p.gamma, "delta": p.delta},
            "scheme": self.scheme,
            "h": self.h,
            "phi": self.phi,
            "start": [float(self.start[0]), float(self.start[1])],
            "n_steps": self.n_steps,
            "analyses": sorted(self.analyses),
            "overlay_reference_h": self.overlay_ref_h,
        }


@dataclass(frozen=True)
class DirectionSummary:
    """Sign-table conformity of every checkable trajectory point."""

    checked: int
    conforming: int
    skipped: int
    violation_steps: list[int] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "checked": self.checked,
            "conforming": self.conforming,
            "skipped": self.skipped,
            "violation_steps": list(self.violation_steps),
        }


@dataclass(frozen=True)
class OverlaySection:
    """Overlay analysis payload: errors vs an RK4 reference run."""

    result: OverlayResult
    reference_h: float
    reference_csv: str

    def to_json_dict(self) -> dict:
        r = self.result
        return {
            "reference_scheme": RK4,
            "reference_h": self.reference_h,
            "reference_csv": self.reference_csv,
            "compared_t_min": float(r.times[0]),
            "compared_t_max": float(r.times[-1]),
            "n_compared": int(len(r.times)),
            "sup_rel_error": r.sup_rel_error,
            "sup_rel_error_x": r.sup_rel_error_x,
            "sup_rel_error_y": r.sup_rel_error_y,
            "tolerance": OVERLAY_TOLERANCE,
            "tolerance_note": OVERLAY_TOLERANCE_NOTE,
        }


@dataclass(frozen=True)
class RunReport:
    """Everything one scenario run produced, ready for JSON."""

    scenario: Scenario
    trajectory_csv: str
    n_points: int
    diverged_at: int | None
    wall_clock_seconds: float
    stability: list[StabilityReport] | None = None
    direction: DirectionSummary | None = None
    positivity: PositivityReport | None = None
    closure: ClosureMetrics | None = None
    overlay: OverlaySection | None = None

    def to_json_dict(self) -> dict:
        doc = {
            "schema": SCHEMA_ID,
            "tool_version": __version__,
            "scenario": self.scenario.to_json_dict(),
            "trajectory_csv": self.trajectory_csv,
            "n_points": self.n_points,
            "diverged_at": self.diverged_at,
            "wall_clock_seconds": self.wall_clock_seconds,
        }
        if self.stability is not None:
            doc["stability"] = [_stability_json(r) for r in self.stability]
        if self.direction is not None:
            doc["direction"] = self.direction.to_json_dict()
        if self.positivity is not None:
            doc["positivity"] = {
                "first_negative_step": self.positivity.first_negative_step,
                "negative_variable": self.positivity.negative_variable,
                "recovered_positive_step": self.positivity.recovered_positive_step,
                "exit_case": self.positivity.exit_case,
            }
        if self.closure is not None:
            c = self.closure
            p = self.scenario.params
            doc["closure"] = {
                "verdict": c.verdict,
                "n_crossings": c.n_crossings,
                "crossing_times": [float(v) for v in c.crossing_times],
                "crossing_x": [float(v) for v in c.crossing_x],
                "crossing_v": [float(v) for v in c.crossing_v],
                "drifts": [float(v) for v in c.drifts],
                "section": {"y_level": p.alpha / p.beta, "x_min": p.delta / p.gamma},
                "drift_threshold": DRIFT_THRESHOLD,
            }
        if self.overlay is not None:
            doc["overlay"] = self.overlay.to_json_dict()
        return doc


def _stability_json(r: StabilityReport) -> dict:
    return {
        "system": r.system,
        "point": [float(r.point.x), float(r.point.y)],
        "jacobian": [[r.jacobian.a, r.jacobian.b], [r.jacobian.c, r.jacobian.d]],
        "eigenvalues": [
            {"re": r.eigen.lambda1.real, "im": r.eigen.lambda1.imag},
            {"re": r.eigen.lambda2.real, "im": r.eigen.lambda2.imag},
        ],
        "moduli": [abs(r.eigen.lambda1), abs(r.eigen.lambda2)],
        "classification": r.classification,
        "h": r.h,
        "phi": r.phi,
        "note": r.note,
    }


def _stability_reports(sc: Scenario) -> list[StabilityReport]:
    fp = fixed_points(sc.params)
    points = (fp.origin, fp.coexistence)
    if sc.scheme == EULER:
        return [classify_euler(sc.params, sc.h, pt) for pt in points]
    if sc.scheme == MICKENS:
        phi_val = PHI_FUNCTIONS[sc.phi](sc.h)
        return [classify_mickens(sc.params, phi_val, pt) for pt in points]
    return [classify_continuous(sc.params, pt) for pt in points]


def _direction_summary(sc: Scenario, traj: Trajectory) -> DirectionSummary:
    kind = CONTINUOUS if sc.scheme == RK4 else sc.scheme
    phi_val = PHI_FUNCTIONS[sc.phi](sc.h) if sc.scheme == MICKENS else None
    checked = conforming = skipped = 0
    violations: list[int] = []
    p = sc.params
    for i in range(traj.n_points):
        s = (float(traj.states[i, 0]), float(traj.states[i, 1]))
        if classify_region(p, s) not in INTERIOR_REGIONS:
            skipped += 1
            continue
        rep = check_direction(kind, p, s, h=sc.h, phi_val=phi_val)
        checked += 1
        if rep.conforms:
            conforming += 1
        elif len(violations) < MAX_VIOLATIONS_LISTED:
            violations.append(i)
    return DirectionSummary(checked, conforming, skipped, violations)


def run_scenario(sc: Scenario, out_dir) -> RunReport:
    """Simulate, run the requested analyses, and write CSV + JSON.

    Output files are ``<name>.csv`` and ``<name>.json`` (plus
    ``<name>-ref.csv`` when an overlay reference is run) inside
    ``out_dir``, which is created if needed.
    """
    sc.validate()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    traj = simulate(sc.scheme, sc.params, sc.h, sc.start, sc.n_steps, phi=PHI_FUNCTIONS[sc.phi])
    return _finish_scenario(sc, traj, out_dir, t0)


# Shared parameter set of all bundled presets.
PRESET_PARAMS = ModelParams(alpha=1.0, beta=0.1, gamma=0.075, delta=0.75)


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    scenarios: tuple[Scenario, ...]
    svg: bool = True


def _preset(name, description, scenarios, svg=True):
    return Preset(name=name, description=description, scenarios=tuple(scenarios), svg=svg)


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        _preset(
            "fig2-phase-portrait",
            "closed orbits of the flow (RK4 reference) from several starts",
            [
                Scenario(
                    name=f"fig2-phase-portrait-{i}",
                    params=PRESET_PARAMS,
                    scheme=RK4,
                    h=1e-3,
                    start=State(float(v), float(v)),
                    n_steps=40_000,
                    analyses=frozenset({"stability", "closure"}),
                )
                for i, v in enumerate((4, 6, 8, 9), start=1)
            ],
        ),
        _preset(
            "fig3-oscillations",
            "periodic prey/predator oscillations of the flow (RK4 reference)",
            [
                Scenario(
                    name="fig3-oscillations",
                    params=PRESET_PARAMS,
                    scheme=RK4,
                    h=1e-3,
                    start=State(5.0, 5.0),
                    n_steps=30_000,
                    analyses=frozenset({"closure"}),
                )
            ],
        ),
        _preset(
            "fig4-euler-spiral",
            "forward Euler near the coexistence point spirals outward (h=0.02)",
            [
                Scenario(
                    name="fig4-euler-spiral",
                    params=PRESET_PARAMS,
                    scheme=EULER,
                    h=0.02,
                    start=State(8.0, 8.0),
                    n_steps=3_000,
                    analyses=frozenset({"stability", "closure"}),
                )
            ],
        ),
        _preset(
            "fig5-euler-oscillations",
            "forward Euler oscillations with growing amplitude (h=0.02, start 5,5)",
            [
                Scenario(
                    name="fig5-euler-oscillations",
                    params=PRESET_PARAMS,
                    scheme=EULER,
                    h=0.02,
                    start=State(5.0, 5.0),
                    n_steps=10_000,
                    analyses=frozenset({"closure", "positivity", "direction"}),
                )
            ],
        ),
        _preset(
            "fig7-euler-negative",
            "forward Euler predicts a negative prey density that later returns positive (h=0.03)",
            [
                Scenario(
                    name="fig7-euler-negative",
                    params=PRESET_PARAMS,
                    scheme=EULER,
                    h=0.03,
                    start=State(5.0, 5.0),
                    n_steps=10_000,
                    analyses=frozenset({"positivity", "closure"}),
                )
            ],
        ),
        _preset(
            "fig8-mickens-overlay",
            "Mickens scheme (phi(h)=h=0.01) stays positive, closes orbits, and is compared "
            "pointwise against an RK4 reference (covers both prey and predator series)",
            [
                Scenario(
                    name="fig8-mickens-overlay",
                    params=PRESET_PARAMS,
                    scheme=MICKENS,
                    h=0.01,
                    start=State(5.0, 5.0),
                    n_steps=3_000,
                    analyses=frozenset({"stability", "positivity", "closure", "overlay"}),
                    overlay_ref_h=1e-4,
                )
            ],
        ),
    )
}


def run_preset(name: str, out_dir) -> list[RunReport]:
    """Run every scenario of a preset and write its phase-portrait SVG."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(sorted(PRESETS))}")
    preset = PRESETS[name]
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    reports = []
    trajs = []
    for sc in preset.scenarios:
        sc.validate()
        t0 = time.perf_counter()
        traj = simulate(sc.scheme, sc.params, sc.h, sc.start, sc.n_steps, phi=PHI_FUNCTIONS[sc.phi])
        trajs.append(traj)
        reports.append(_finish_scenario(sc, traj, out_dir, t0))
    if preset.svg:
        emit_phase_svg(trajs, preset.scenarios[0].params, out_dir / f"{name}.svg")
    return reports


def _finish_scenario(sc: Scenario, traj: Trajectory, out_dir: Path, t0: float) -> RunReport:
    # Analyses and file emission shared by run_scenario and run_preset.
    csv_name = f"{sc.name}.csv"
    emit_csv(traj, out_dir / csv_name)
    stability = _stability_reports(sc) if "stability" in sc.analyses else None
    direction = _direction_summary(sc, traj) if "direction" in sc.analyses else None
    positivity = monitor_positivity(traj) if "positivity" in sc.analyses else None
    closure = measure_closure(traj) if "closure" in sc.analyses else None
    overlay = None
    if "overlay" in sc.analyses:
        ref_h = sc.overlay_ref_h if sc.overlay_ref_h is not None else sc.h / 100.0
        t_end = float(traj.times[-1])
        ref = simulate(RK4, sc.params, ref_h, sc.start, max(1, round(t_end / ref_h)))
        ref_csv = f"{sc.name}-ref.csv"
        emit_csv(ref, out_dir / ref_csv)
        overlay = OverlaySection(compare_overlay(traj, ref), ref_h, ref_csv)
    report = RunReport(
        scenario=sc,
        trajectory_csv=csv_name,
        n_points=traj.n_points,
        diverged_at=traj.diverged_at,
        wall_clock_seconds=time.perf_counter() - t0,
        stability=stability,
        direction=direction,
        positivity=positivity,
        closure=closure,
        overlay=overlay,
    )
    emit_report_json(report, out_dir / f"{sc.name}.json")
    return report
