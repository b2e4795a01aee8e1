"""Qualitative diagnostics of trajectories and states.

The lines x = delta/gamma and y = alpha/beta cut the open positive
quadrant into four regions, each with a fixed sign pattern of motion:

    region   location                   x motion   y motion
    I        x > delta/gamma, y > alpha/beta    -          +
    II       x < delta/gamma, y > alpha/beta    -          -
    III      x < delta/gamma, y < alpha/beta    +          -
    IV       x > delta/gamma, y < alpha/beta    +          +

This table holds for the flow and for both discrete maps at every step
size, with one refinement: the Mickens y-update moves according to
where the *updated* x lands relative to delta/gamma.

The module also locates negative excursions of Euler trajectories
(which of the two admissible crossings produced them, and whether the
variable later returns positive), measures orbit closure with a
Poincare section, and compares two trajectories on a common time grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .model import ModelParams, State, first_integral, vector_field
from .schemes import EULER, MICKENS, Trajectory, _euler_map, _mickens_map
from .stability import CONTINUOUS

REGION_I = "I"
REGION_II = "II"
REGION_III = "III"
REGION_IV = "IV"
BOUNDARY_X = "BoundaryX"
BOUNDARY_Y = "BoundaryY"
EXTERIOR = "Exterior"
INTERIOR_REGIONS = (REGION_I, REGION_II, REGION_III, REGION_IV)

LINE_TOL = 1e-12

REGION_II_X_CROSS = "RegionII_xCross"
REGION_III_Y_CROSS = "RegionIII_yCross"

CLOSED = "Closed"
SPIRAL_OUT = "SpiralOut"
SPIRAL_IN = "SpiralIn"
INCONCLUSIVE = "Inconclusive"

# Relative change in the section-crossing coordinate below which a pair
# of consecutive crossings counts as "returned"; chosen to separate the
# closed / spiral-out / spiral-in behaviours by orders of magnitude at
# the bundled preset parameters.
DRIFT_THRESHOLD = 0.005


def classify_region(p: ModelParams, s) -> str:
    """Region of state ``s``: I-IV, BoundaryX/Y (within LINE_TOL of a
    dividing line) or Exterior (any coordinate <= 0)."""
    x, y = s
    if x <= 0.0 or y <= 0.0:
        return EXTERIOR
    x_line = p.delta / p.gamma
    y_line = p.alpha / p.beta
    if abs(x - x_line) <= LINE_TOL:
        return BOUNDARY_X
    if abs(y - y_line) <= LINE_TOL:
        return BOUNDARY_Y
    if x > x_line:
        return REGION_I if y > y_line else REGION_IV
    return REGION_II if y > y_line else REGION_III


class DirectionReport(NamedTuple):
    region: str
    dx_sign: int  # -1, 0, +1
    dy_sign: int
    conforms: bool


def _sign(v: float) -> int:
    if v > 0.0:
        return 1
    if v < 0.0:
        return -1
    return 0


def check_direction(
    kind: str,
    p: ModelParams,
    s,
    h: float | None = None,
    phi_val: float | None = None,
) -> DirectionReport:
    """Verify the motion of one step against the region sign table.

    ``kind`` is "continuous", "euler" or "mickens".  Euler needs ``h``;
    Mickens needs ``phi_val`` (the value of the denominator function).
    States on a dividing line or outside the open quadrant are rejected
    as ambiguous.
    """
    region = classify_region(p, s)
    if region not in INTERIOR_REGIONS:
        raise ValueError(f"direction check needs a state strictly inside a region, got {region}")
    x, y = s
    if kind == CONTINUOUS:
        dx, dy = vector_field(p, s)
        x_for_y = x
    elif kind == EULER:
        if h is None:
            raise ValueError("euler direction check requires h")
        nx, ny = _euler_map(p.alpha, p.beta, p.gamma, p.delta, h, x, y)
        dx, dy = nx - x, ny - y
        x_for_y = x
    elif kind == MICKENS:
        if phi_val is None:
            raise ValueError("mickens direction check requires phi_val")
        nx, ny = _mickens_map(p.alpha, p.beta, p.gamma, p.delta, phi_val, x, y)
        dx, dy = nx - x, ny - y
        # The y-quotient compares gamma*x_new against delta, so the
        # expected sign conditions on the updated x.
        x_for_y = nx
    else:
        raise ValueError(f"unknown system kind {kind!r}")

    y_line = p.alpha / p.beta
    x_line = p.delta / p.gamma
    expected_dx = -1 if y > y_line else 1
    if x_for_y > x_line:
        expected_dy = 1
    elif x_for_y < x_line:
        expected_dy = -1
    else:
        expected_dy = 0
    dx_sign = _sign(dx)
    dy_sign = _sign(dy)
    return DirectionReport(
        region=region,
        dx_sign=dx_sign,
        dy_sign=dy_sign,
        conforms=(dx_sign == expected_dx and dy_sign == expected_dy),
    )


@dataclass(frozen=True)
class PositivityReport:
    """Where (if anywhere) a trajectory first leaves the closed quadrant.

    ``exit_case`` identifies which of the two admissible crossings
    produced the excursion, from the predecessor state's region: an
    x-crossing out of region II or a y-crossing out of region III.
    All-positive trajectories yield an empty report.
    """

    first_negative_step: int | None = None
    negative_variable: str | None = None  # "x" | "y"
    recovered_positive_step: int | None = None
    exit_case: str | None = None

    @property
    def is_empty(self) -> bool:
        return self.first_negative_step is None


def monitor_positivity(traj: Trajectory) -> PositivityReport:
    """Locate the first negative coordinate and any later recovery."""
    if traj.n_points == 0:
        raise ValueError("positivity monitor needs a non-empty trajectory")
    x = traj.x
    y = traj.y
    negative = (x < 0.0) | (y < 0.0)
    if not negative.any():
        return PositivityReport()
    i = int(np.argmax(negative))
    var = "x" if x[i] < 0.0 else "y"
    series = x if var == "x" else y
    later_positive = series[i + 1 :] > 0.0
    recovered = int(i + 1 + np.argmax(later_positive)) if later_positive.any() else None
    exit_case = None
    if i > 0:
        prev_region = classify_region(traj.params, (float(x[i - 1]), float(y[i - 1])))
        if prev_region == REGION_II and var == "x":
            exit_case = REGION_II_X_CROSS
        elif prev_region == REGION_III and var == "y":
            exit_case = REGION_III_Y_CROSS
    return PositivityReport(
        first_negative_step=i,
        negative_variable=var,
        recovered_positive_step=recovered,
        exit_case=exit_case,
    )


@dataclass(frozen=True)
class ClosureMetrics:
    """Successive upward crossings of the section y = alpha/beta,
    x > delta/gamma, and the per-period drift of the crossing abscissa.

    ``drifts`` holds the relative change between consecutive crossing x
    values (populated only when at least three crossings exist).  The
    conserved quantity V at each crossing is reported as a secondary
    drift series.
    """

    crossing_times: np.ndarray
    crossing_x: np.ndarray
    crossing_v: np.ndarray
    drifts: np.ndarray
    verdict: str

    @property
    def n_crossings(self) -> int:
        return len(self.crossing_x)


def measure_closure(traj: Trajectory, p: ModelParams | None = None) -> ClosureMetrics:
    """Judge whether an orbit closes, spirals out, or spirals in.

    Crossing locations are linearly interpolated between the bracketing
    steps.  Verdicts: Closed when every consecutive drift is below
    DRIFT_THRESHOLD in magnitude, SpiralOut / SpiralIn when every drift
    is consistently above / below it, Inconclusive otherwise or with
    fewer than three crossings.

    The trajectory must start strictly inside the positive quadrant and
    away from the coexistence point; starts on an axis or at the
    equilibrium never circle the section and are rejected.
    """
    if p is None:
        p = traj.params
    if traj.n_points == 0:
        raise ValueError("closure measurement needs a non-empty trajectory")
    x0, y0 = float(traj.states[0, 0]), float(traj.states[0, 1])
    if not (x0 > 0.0 and y0 > 0.0):
        raise ValueError(f"closure measurement requires a start in the open quadrant, got ({x0}, {y0})")
    x_line = p.delta / p.gamma
    y_line = p.alpha / p.beta
    if math.hypot(x0 - x_line, y0 - y_line) <= 1e-6:
        raise ValueError("closure measurement requires a start away from the coexistence point")

    x = traj.x
    y = traj.y
    t = traj.times
    below = y[:-1] < y_line
    at_or_above = y[1:] >= y_line
    candidates = np.nonzero(below & at_or_above)[0]
    theta = (y_line - y[candidates]) / (y[candidates + 1] - y[candidates])
    xc = x[candidates] + theta * (x[candidates + 1] - x[candidates])
    tc = t[candidates] + theta * (t[candidates + 1] - t[candidates])
    keep = xc > x_line
    xc = xc[keep]
    tc = tc[keep]
    vc = np.array([first_integral(p, (float(v), y_line)) for v in xc])

    if len(xc) < 3:
        return ClosureMetrics(tc, xc, vc, np.empty(0), INCONCLUSIVE)
    drifts = np.diff(xc) / xc[:-1]
    if np.all(np.abs(drifts) < DRIFT_THRESHOLD):
        verdict = CLOSED
    elif np.all(drifts > DRIFT_THRESHOLD):
        verdict = SPIRAL_OUT
    elif np.all(drifts < -DRIFT_THRESHOLD):
        verdict = SPIRAL_IN
    else:
        verdict = INCONCLUSIVE
    return ClosureMetrics(tc, xc, vc, drifts, verdict)


@dataclass(frozen=True)
class OverlayResult:
    """Pointwise difference of two trajectories on a shared time grid,
    normalized by the peak-to-peak amplitude of the reference."""

    times: np.ndarray
    rel_err_x: np.ndarray
    rel_err_y: np.ndarray
    sup_rel_error_x: float
    sup_rel_error_y: float
    sup_rel_error: float


def compare_overlay(a: Trajectory, b: Trajectory) -> OverlayResult:
    """Supremum relative deviation of trajectory ``a`` from reference ``b``.

    Both runs must share parameters and initial state.  The finer grid
    is resampled at the coarser one's times (linear interpolation) over
    the overlapping time range; disjoint ranges are rejected.
    """
    if a.params != b.params:
        raise ValueError("overlay comparison requires identical parameters")
    if a.n_points == 0 or b.n_points == 0:
        raise ValueError("overlay comparison needs non-empty trajectories")
    if not np.array_equal(a.states[0], b.states[0]):
        raise ValueError("overlay comparison requires identical initial states")
    t0 = max(float(a.times[0]), float(b.times[0]))
    t1 = min(float(a.times[-1]), float(b.times[-1]))
    if t1 < t0:
        raise ValueError("overlay comparison requires overlapping time ranges")

    coarse, fine = (a, b) if a.h >= b.h else (b, a)
    mask = (coarse.times >= t0) & (coarse.times <= t1)
    ts = coarse.times[mask]

    def sample(traj, grid):
        if traj is coarse:
            return traj.x[mask], traj.y[mask]
        return (
            np.interp(grid, traj.times, traj.x),
            np.interp(grid, traj.times, traj.y),
        )

    ax, ay = sample(a, ts)
    bx, by = sample(b, ts)
    scale_x = float(np.ptp(bx)) or max(1.0, float(np.max(np.abs(bx))))
    scale_y = float(np.ptp(by)) or max(1.0, float(np.max(np.abs(by))))
    rel_x = np.abs(ax - bx) / scale_x
    rel_y = np.abs(ay - by) / scale_y
    sup_x = float(np.max(rel_x))
    sup_y = float(np.max(rel_y))
    return OverlayResult(ts, rel_x, rel_y, sup_x, sup_y, max(sup_x, sup_y))
