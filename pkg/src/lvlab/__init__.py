"""lvlab: a numerical laboratory for the Lotka-Volterra system.

The package implements the continuous predator-prey model, its
forward-Euler and Mickens nonstandard discretizations with a fixed-step
RK4 reference, closed-form 2x2 stability analysis at the fixed points,
and qualitative diagnostics (region sign tables, positivity monitoring,
Poincare-section orbit closure, trajectory overlays), plus CSV/JSON/SVG
reporting and a small CLI.
"""
from .diagnostics import (
    BOUNDARY_X,
    BOUNDARY_Y,
    CLOSED,
    DRIFT_THRESHOLD,
    EXTERIOR,
    INCONCLUSIVE,
    INTERIOR_REGIONS,
    REGION_I,
    REGION_II,
    REGION_III,
    REGION_IV,
    SPIRAL_IN,
    SPIRAL_OUT,
    ClosureMetrics,
    DirectionReport,
    OverlayResult,
    PositivityReport,
    check_direction,
    classify_region,
    compare_overlay,
    measure_closure,
    monitor_positivity,
)
from .model import (
    FixedPointPair,
    Matrix2,
    ModelParams,
    State,
    continuous_jacobian,
    first_integral,
    fixed_points,
    vector_field,
)
from .presets import (
    ANALYSES,
    PRESETS,
    ConfigError,
    Preset,
    RunReport,
    Scenario,
    run_preset,
    run_scenario,
)
from .reporting import ParsedCsv, emit_csv, emit_phase_svg, emit_report_json, parse_csv
from .schemes import (
    EULER,
    MICKENS,
    PHI_FUNCTIONS,
    RK4,
    SCHEMES,
    Trajectory,
    euler_step,
    mickens_step,
    phi_expm1,
    phi_identity,
    rk4_step,
    simulate,
)
from .stability import (
    CLASSIFICATIONS,
    CONTINUOUS,
    LINEAR_CENTER,
    NON_HYPERBOLIC,
    SADDLE_POINT,
    SINK,
    SOURCE,
    STABLE_FOCUS,
    UNSTABLE_FOCUS,
    Eigenpair,
    StabilityReport,
    classify_continuous,
    classify_euler,
    classify_mickens,
    eig2,
    euler_jacobian,
    mickens_jacobian,
)
from .version import __version__

__all__ = [
    "__version__",
    # model
    "ModelParams", "State", "Matrix2", "FixedPointPair",
    "vector_field", "continuous_jacobian", "fixed_points", "first_integral",
    # schemes
    "EULER", "MICKENS", "RK4", "SCHEMES", "PHI_FUNCTIONS",
    "phi_identity", "phi_expm1",
    "euler_step", "mickens_step", "rk4_step", "simulate", "Trajectory",
    # stability
    "CONTINUOUS", "CLASSIFICATIONS", "SADDLE_POINT", "SOURCE", "SINK",
    "UNSTABLE_FOCUS", "STABLE_FOCUS", "LINEAR_CENTER", "NON_HYPERBOLIC",
    "Eigenpair", "StabilityReport", "eig2", "euler_jacobian",
    "mickens_jacobian", "classify_continuous", "classify_euler", "classify_mickens",
    # diagnostics
    "REGION_I", "REGION_II", "REGION_III", "REGION_IV",
    "BOUNDARY_X", "BOUNDARY_Y", "EXTERIOR", "INTERIOR_REGIONS",
    "CLOSED", "SPIRAL_OUT", "SPIRAL_IN", "INCONCLUSIVE", "DRIFT_THRESHOLD",
    "DirectionReport", "PositivityReport", "ClosureMetrics", "OverlayResult",
    "classify_region", "check_direction", "monitor_positivity",
    "measure_closure", "compare_overlay",
    # reporting / presets
    "emit_csv", "parse_csv", "ParsedCsv", "emit_report_json", "emit_phase_svg",
    "Scenario", "RunReport", "Preset", "PRESETS", "ANALYSES", "ConfigError",
    "run_scenario", "run_preset",
]
