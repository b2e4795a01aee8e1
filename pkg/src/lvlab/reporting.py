"""File emitters: trajectory CSV, run-report JSON, and phase-portrait SVG.

All emitters are deterministic: identical inputs produce identical
bytes (the JSON report's wall-clock field is the one value that varies
between runs).  Numbers are written as shortest-round-trip decimal
text, never more than 17 significant digits, so CSV output parses back
to the exact same doubles.  Writes go to a ``.partial`` sibling first
and are renamed into place only on success, so a failed write never
leaves a final-looking file behind.
"""
from __future__ import annotations

import json
import os
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .model import first_integral
from .schemes import Trajectory

SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
SVG_MAX_POLYLINE_POINTS = 2000


def _fmt(v: float) -> str:
    """Shortest decimal text that round-trips the double exactly."""
    return repr(float(v))


def _atomic_write_text(path, text: str) -> None:
    path = Path(path)
    partial = path.with_name(path.name + ".partial")
    try:
        partial.write_text(text, encoding="utf-8", newline="")
        os.replace(partial, path)
    except OSError as e:
        raise OSError(f"failed writing {path}: {e}") from e


def emit_csv(traj: Trajectory, path) -> None:
    """Write a trajectory as ``step,t,x,y,V`` rows.

    The V column holds the conserved quantity and is left empty on rows
    where any coordinate is <= 0 (outside its domain).  Output
    round-trips losslessly through :func:`parse_csv`.
    """
    p = traj.params
    lines = ["step,t,x,y,V"]
    for i in range(traj.n_points):
        x = float(traj.states[i, 0])
        y = float(traj.states[i, 1])
        t = float(traj.times[i])
        v = _fmt(first_integral(p, (x, y))) if x > 0.0 and y > 0.0 else ""
        lines.append(f"{i},{_fmt(t)},{_fmt(x)},{_fmt(y)},{v}")
    _atomic_write_text(path, "\n".join(lines) + "\n")


class ParsedCsv(NamedTuple):
    """Columns read back from a trajectory CSV."""

    steps: np.ndarray
    times: np.ndarray
    states: np.ndarray
    v: list[float | None]

    def to_trajectory(self, scheme, params, h, diverged_at=None) -> Trajectory:
        """Rebuild a Trajectory; the CSV carries no scheme/params/h."""
        return Trajectory(
            scheme=scheme,
            params=params,
            h=h,
            times=self.times,
            states=self.states,
            diverged_at=diverged_at,
        )


def parse_csv(path) -> ParsedCsv:
    """Inverse of :func:`emit_csv`."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise OSError(f"failed reading {path}: {e}") from e
    lines = text.splitlines()
    if not lines or lines[0] != "step,t,x,y,V":
        raise ValueError(f"{path}: not a trajectory CSV (bad header)")
    steps, times, xs, ys, vs = [], [], [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 5:
            raise ValueError(f"{path}:{lineno}: expected 5 fields, got {len(fields)}")
        steps.append(int(fields[0]))
        times.append(float(fields[1]))
        xs.append(float(fields[2]))
        ys.append(float(fields[3]))
        vs.append(float(fields[4]) if fields[4] else None)
    return ParsedCsv(
        steps=np.asarray(steps, dtype=np.int64),
        times=np.asarray(times, dtype=np.float64),
        states=np.column_stack([np.asarray(xs), np.asarray(ys)]),
        v=vs,
    )


def emit_report_json(report, path) -> None:
    """Write a run report as JSON with sorted keys and a schema id.

    Accepts a RunReport (anything with ``to_json_dict``) or a plain
    mapping.  The document validates against
    ``lvlab/schemas/run_report.schema.json``.
    """
    doc = report.to_json_dict() if hasattr(report, "to_json_dict") else dict(report)
    _atomic_write_text(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _decimate(arr: np.ndarray) -> np.ndarray:
    n = len(arr)
    if n <= SVG_MAX_POLYLINE_POINTS:
        return arr
    stride = -(-n // SVG_MAX_POLYLINE_POINTS)  # ceil division
    idx = list(range(0, n, stride))
    if idx[-1] != n - 1:
        idx.append(n - 1)
    return arr[idx]


def emit_phase_svg(trajs, p, path, width: int = 640, height: int = 480) -> None:
    """Standalone SVG 1.1 phase portrait.

    Draws each trajectory as a polyline, the two dividing lines
    x = delta/gamma and y = alpha/beta, and markers on both fixed
    points.  Output bytes depend only on the inputs.
    """
    trajs = list(trajs)
    if not trajs:
        raise ValueError("emit_phase_svg requires at least one trajectory")
    x_line = p.delta / p.gamma
    y_line = p.alpha / p.beta
    x_max = 1.05 * max(max(float(np.max(t.x)) for t in trajs), x_line)
    y_max = 1.05 * max(max(float(np.max(t.y)) for t in trajs), y_line)
    x_max = max(x_max, 1e-9)
    y_max = max(y_max, 1e-9)
    pad = 10.0

    def px(x):
        return pad + (x / x_max) * (width - 2 * pad)

    def py(y):
        return height - pad - (y / y_max) * (height - 2 * pad)

    def c(v):
        return format(v, ".2f")

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="{c(pad)}" y="{c(pad)}" width="{c(width - 2 * pad)}" '
        f'height="{c(height - 2 * pad)}" fill="white" stroke="#333333" stroke-width="1"/>',
        # dividing lines of the four regions
        f'<line x1="{c(px(x_line))}" y1="{c(py(0.0))}" x2="{c(px(x_line))}" '
        f'y2="{c(py(y_max))}" stroke="#999999" stroke-width="1" stroke-dasharray="4,3"/>',
        f'<line x1="{c(px(0.0))}" y1="{c(py(y_line))}" x2="{c(px(x_max))}" '
        f'y2="{c(py(y_line))}" stroke="#999999" stroke-width="1" stroke-dasharray="4,3"/>',
    ]
    for k, traj in enumerate(trajs):
        pts = _decimate(traj.states)
        coords = " ".join(f"{c(px(float(x)))},{c(py(float(y)))}" for x, y in pts)
        color = SVG_PALETTE[k % len(SVG_PALETTE)]
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.2"/>'
        )
    for fx, fy in ((0.0, 0.0), (x_line, y_line)):
        parts.append(
            f'<circle cx="{c(px(fx))}" cy="{c(py(fy))}" r="3.5" '
            f'fill="#000000" stroke="none"/>'
        )
    parts.append("</svg>")
    _atomic_write_text(path, "\n".join(parts) + "\n")
