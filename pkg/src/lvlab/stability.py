"""Linear stability analysis at the fixed points, continuous and discrete.

Eigenvalues of 2x2 Jacobians are computed in closed form from trace and
determinant.  Classification uses sign of the real parts for the flow
and modulus relative to 1 for the one-step maps; eigenvalues within
UNIT_TOL of the neutral threshold are reported as LinearCenter (complex
conjugate pair) or NonHyperbolic (real) instead of asserting a strict
stability type.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .model import Matrix2, ModelParams, State, continuous_jacobian, fixed_points, vector_field
from .schemes import EULER, MICKENS

CONTINUOUS = "continuous"

SADDLE_POINT = "SaddlePoint"
SOURCE = "Source"
SINK = "Sink"
UNSTABLE_FOCUS = "UnstableFocus"
STABLE_FOCUS = "StableFocus"
LINEAR_CENTER = "LinearCenter"
NON_HYPERBOLIC = "NonHyperbolic"
CLASSIFICATIONS = (
    SADDLE_POINT,
    SOURCE,
    SINK,
    UNSTABLE_FOCUS,
    STABLE_FOCUS,
    LINEAR_CENTER,
    NON_HYPERBOLIC,
)

# Width of the neutral band around Re(lambda) = 0 (flow) or |lambda| = 1
# (maps).  Within the band we refuse to call a strict stability type.
UNIT_TOL = 1e-9

# Residual of the vector field above which a point is not accepted as a
# fixed point.
FIXED_POINT_TOL = 1e-9

LINEAR_CENTER_NOTE = (
    "linearized analysis only: a center of the linearization does not "
    "determine stability of the nonlinear system at this point"
)
EULER_COEXISTENCE_NOTE = (
    "eigenvalues form the complex-conjugate pair 1 +- i*sqrt(alpha*delta)*h "
    "with modulus sqrt(1 + alpha*delta*h^2) > 1 for every h > 0"
)


class Eigenpair(NamedTuple):
    """Eigenvalues of a real 2x2 matrix: both real or complex conjugates.

    Real pairs are ordered ascending by real part; conjugate pairs carry
    the negative imaginary part first.
    """

    lambda1: complex
    lambda2: complex

    @property
    def moduli(self) -> tuple[float, float]:
        return (abs(self.lambda1), abs(self.lambda2))

    @property
    def is_complex_pair(self) -> bool:
        return self.lambda1.imag != 0.0


@dataclass(frozen=True)
class StabilityReport:
    """Fixed point, Jacobian, eigenvalues and classification for one system."""

    system: str  # "continuous" | "euler" | "mickens"
    point: State
    jacobian: Matrix2
    eigen: Eigenpair
    classification: str
    h: float | None = None
    phi: float | None = None
    note: str | None = None


def eig2(m: Matrix2) -> Eigenpair:
    """Roots of lambda^2 - trace(m)*lambda + det(m).

    Uses the numerically stable quadratic formula (larger-magnitude root
    first, companion root via det) so the characteristic-polynomial
    residual stays at rounding level.
    """
    tr = m.a + m.d
    det = m.a * m.d - m.b * m.c
    disc = tr * tr - 4.0 * det
    if disc >= 0.0:
        s = math.sqrt(disc)
        if tr >= 0.0:
            r1 = 0.5 * (tr + s)
        else:
            r1 = 0.5 * (tr - s)
        r2 = det / r1 if r1 != 0.0 else 0.0
        lo, hi = (r1, r2) if r1 <= r2 else (r2, r1)
        return Eigenpair(complex(lo, 0.0), complex(hi, 0.0))
    im = 0.5 * math.sqrt(-disc)
    re = 0.5 * tr
    return Eigenpair(complex(re, -im), complex(re, im))


def euler_jacobian(p: ModelParams, h: float, s) -> Matrix2:
    """Jacobian of the forward-Euler map at state ``s``."""
    x, y = s
    return Matrix2(
        1.0 + p.alpha * h - p.beta * h * y,
        -p.beta * h * x,
        p.gamma * h * y,
        1.0 + p.gamma * h * x - p.delta * h,
    )


def mickens_jacobian(p: ModelParams, phi_val: float, s) -> Matrix2:
    """Jacobian of the Mickens map at state ``s`` for a fixed phi value.

    The entries are the exact partial derivatives of the one-step update
    (x-quotient, then y-quotient with the fresh x substituted).
    """
    if not (math.isfinite(phi_val) and phi_val > 0.0):
        raise ValueError(f"phi value must be finite and > 0, got {phi_val!r}")
    x, y = s
    if x < 0.0 or y < 0.0:
        raise ValueError(f"mickens_jacobian requires a non-negative state, got ({x}, {y})")
    alpha, beta, gamma, delta = p.alpha, p.beta, p.gamma, p.delta
    big_p = 2.0 * alpha * phi_val + 1.0
    q = 1.0 + alpha * phi_val + beta * phi_val * y
    r = (1.0 + delta * phi_val) * q + gamma * phi_val * x * big_p
    n = 2.0 * gamma * phi_val * x * y * big_p + y * q
    a = big_p / q
    b = -big_p * beta * phi_val * x / (q * q)
    c = 2.0 * big_p * gamma * phi_val * y / r - n * big_p * gamma * phi_val / (r * r)
    d = (
        (2.0 * big_p * gamma * phi_val * x + 2.0 * beta * phi_val * y + alpha * phi_val + 1.0) / r
        - n * (1.0 + delta * phi_val) * beta * phi_val / (r * r)
    )
    return Matrix2(a, b, c, d)


def _require_fixed_point(p: ModelParams, point) -> State:
    x, y = point
    dx, dy = vector_field(p, (x, y))
    if max(abs(dx), abs(dy)) > FIXED_POINT_TOL:
        raise ValueError(
            f"({x}, {y}) is not a fixed point: vector-field residual "
            f"({dx:.3e}, {dy:.3e}) exceeds {FIXED_POINT_TOL}"
        )
    return State(x, y)


def _is_coexistence(p: ModelParams, point: State) -> bool:
    fp = fixed_points(p).coexistence
    return math.hypot(point.x - fp.x, point.y - fp.y) <= 1e-9 * (1.0 + abs(fp.x) + abs(fp.y))


def _classify(measure1: float, measure2: float, is_complex_pair: bool) -> str:
    neutral1 = abs(measure1) <= UNIT_TOL
    neutral2 = abs(measure2) <= UNIT_TOL
    if neutral1 and neutral2:
        return LINEAR_CENTER if is_complex_pair else NON_HYPERBOLIC
    if neutral1 or neutral2:
        return NON_HYPERBOLIC
    if measure1 > 0.0 and measure2 > 0.0:
        return UNSTABLE_FOCUS if is_complex_pair else SOURCE
    if measure1 < 0.0 and measure2 < 0.0:
        return STABLE_FOCUS if is_complex_pair else SINK
    return SADDLE_POINT


def _finish_report(system, point, jac, h=None, phi=None, extra_note=None) -> StabilityReport:
    eig = eig2(jac)
    if system == CONTINUOUS:
        m1, m2 = eig.lambda1.real, eig.lambda2.real
    else:
        m1, m2 = abs(eig.lambda1) - 1.0, abs(eig.lambda2) - 1.0
    cls = _classify(m1, m2, eig.is_complex_pair)
    notes = []
    if extra_note:
        notes.append(extra_note)
    if cls == LINEAR_CENTER:
        notes.append(LINEAR_CENTER_NOTE)
    return StabilityReport(
        system=system,
        point=point,
        jacobian=jac,
        eigen=eig,
        classification=cls,
        h=h,
        phi=phi,
        note="; ".join(notes) if notes else None,
    )


def classify_continuous(p: ModelParams, point) -> StabilityReport:
    """Stability of the flow at a fixed point.

    The origin is a saddle; the coexistence point has pure-imaginary
    eigenvalues +-i*sqrt(alpha*delta) and is reported as LinearCenter
    with a note that only the linearization is classified.
    """
    pt = _require_fixed_point(p, point)
    return _finish_report(CONTINUOUS, pt, continuous_jacobian(p, pt))


def classify_euler(p: ModelParams, h: float, point) -> StabilityReport:
    """Stability of the forward-Euler map at a fixed point.

    At the origin the map is a saddle for h < 2/delta and a source for
    h > 2/delta; within UNIT_TOL of the threshold the verdict is
    NonHyperbolic rather than a guess.  The coexistence point is an
    unstable focus for every positive h.
    """
    if not (isinstance(h, (int, float)) and math.isfinite(h) and h > 0.0):
        raise ValueError(f"step size must be finite and > 0, got {h!r}")
    pt = _require_fixed_point(p, point)
    note = EULER_COEXISTENCE_NOTE if _is_coexistence(p, pt) else None
    return _finish_report(EULER, pt, euler_jacobian(p, h, pt), h=h, extra_note=note)


def classify_mickens(p: ModelParams, phi_val: float, point) -> StabilityReport:
    """Stability of the Mickens map at a fixed point.

    The origin is a saddle (one modulus below 1, one above) for all
    valid parameters and phi; the coexistence point carries a conjugate
    pair on the unit circle and is reported as LinearCenter.
    """
    pt = _require_fixed_point(p, point)
    return _finish_report(MICKENS, pt, mickens_jacobian(p, phi_val, pt), phi=phi_val)
