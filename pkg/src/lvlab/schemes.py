"""Fixed-step time steppers: forward Euler, Mickens nonstandard, and RK4.

All three schemes share the fixed points of the continuous system.  The
Euler map is the plain explicit update and intentionally performs no
sign handling: it is allowed to produce negative or diverging iterates,
which is exactly the behaviour the diagnostics layer measures.  The
Mickens map uses a denominator function phi(h) = h + O(h^2) and nonlocal
substitutions that make every update a quotient of positive quantities,
so positive states stay positive for any step size.  RK4 serves as the
reference oracle standing in for the exact flow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .model import ModelParams, State

EULER = "euler"
MICKENS = "mickens"
RK4 = "rk4"
SCHEMES = (EULER, MICKENS, RK4)


def phi_identity(h: float) -> float:
    return h


def phi_expm1(h: float) -> float:
    """phi(h) = 1 - exp(-h), an alternate admissible denominator function."""
    return -math.expm1(-h)


PHI_FUNCTIONS: dict[str, Callable[[float], float]] = {
    "identity": phi_identity,
    "expm1": phi_expm1,
}


def _check_step(h: float) -> None:
    if not (isinstance(h, (int, float)) and math.isfinite(h) and h > 0.0):
        raise ValueError(f"step size must be finite and > 0, got {h!r}")


# Scalar one-step maps.  These are the single source of truth for the
# update formulas; the public *_step wrappers and the simulate() loop
# both call them, which keeps repeated runs bit-identical.

def _euler_map(alpha, beta, gamma, delta, h, x, y):
    return (
        x + h * (alpha * x - beta * x * y),
        y + h * (gamma * x * y - delta * y),
    )


def _mickens_map(alpha, beta, gamma, delta, phi_val, x, y):
    # x-update first, then the y-update evaluated at the fresh x.  The
    # sequential form has smaller expression depth than the single
    # closed-form quotient and fewer cancellation sites; both agree to
    # rounding (see tests).
    xn = x * (2.0 * alpha * phi_val + 1.0) / (1.0 + alpha * phi_val + beta * phi_val * y)
    yn = y * (2.0 * gamma * phi_val * xn + 1.0) / (1.0 + gamma * phi_val * xn + delta * phi_val)
    return xn, yn


def _rk4_map(alpha, beta, gamma, delta, h, x, y):
    k1x = alpha * x - beta * x * y
    k1y = -delta * y + gamma * x * y
    x2 = x + 0.5 * h * k1x
    y2 = y + 0.5 * h * k1y
    k2x = alpha * x2 - beta * x2 * y2
    k2y = -delta * y2 + gamma * x2 * y2
    x3 = x + 0.5 * h * k2x
    y3 = y + 0.5 * h * k2y
    k3x = alpha * x3 - beta * x3 * y3
    k3y = -delta * y3 + gamma * x3 * y3
    x4 = x + h * k3x
    y4 = y + h * k3y
    k4x = alpha * x4 - beta * x4 * y4
    k4y = -delta * y4 + gamma * x4 * y4
    return (
        x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
    )


def euler_step(p: ModelParams, h: float, s) -> State:
    """One forward-Euler update.

    Negative inputs are permitted (the scheme itself produces them) and
    no clamping or sign correction is applied.  Overflow to +-inf
    propagates; callers detect divergence.
    """
    _check_step(h)
    x, y = s
    return State(*_euler_map(p.alpha, p.beta, p.gamma, p.delta, h, x, y))


def mickens_step(p: ModelParams, h: float, s, phi: Callable[[float], float] = phi_identity) -> State:
    """One Mickens nonstandard update with denominator function ``phi``.

    Requires a non-negative input state; the scheme's positivity makes
    negative states unreachable from valid starts, so they are rejected
    rather than silently mapped.  Output is strictly positive whenever
    the input is strictly positive.
    """
    _check_step(h)
    x, y = s
    if x < 0.0 or y < 0.0:
        raise ValueError(f"mickens_step requires a non-negative state, got ({x}, {y})")
    phi_val = phi(h)
    if not (math.isfinite(phi_val) and phi_val > 0.0):
        raise ValueError(f"phi({h}) must be finite and > 0, got {phi_val!r}")
    return State(*_mickens_map(p.alpha, p.beta, p.gamma, p.delta, phi_val, x, y))


def rk4_step(p: ModelParams, h: float, s) -> State:
    """One classical 4-stage Runge-Kutta update (local error O(h^5))."""
    _check_step(h)
    x, y = s
    return State(*_rk4_map(p.alpha, p.beta, p.gamma, p.delta, h, x, y))


@dataclass(frozen=True)
class Trajectory:
    """An ordered orbit of a one-step map.

    times[i] == i*h and states[i] is the state after i steps.  When a
    scheme diverges, the trajectory is truncated at the last finite
    state and ``diverged_at`` records the step index at which the first
    non-finite coordinate appeared.
    """

    scheme: str
    params: ModelParams
    h: float
    times: np.ndarray
    states: np.ndarray
    diverged_at: int | None = None

    @property
    def n_points(self) -> int:
        return len(self.times)

    @property
    def x(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def y(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def steps(self) -> np.ndarray:
        return np.arange(self.n_points)

    def state(self, i: int) -> State:
        return State(float(self.states[i, 0]), float(self.states[i, 1]))

    def points(self) -> Iterator[tuple[int, float, State]]:
        for i in range(self.n_points):
            yield i, float(self.times[i]), self.state(i)


def simulate(
    scheme: str,
    p: ModelParams,
    h: float,
    s0,
    n_steps: int,
    phi: Callable[[float], float] = phi_identity,
) -> Trajectory:
    """Iterate the chosen step map ``n_steps`` times from ``s0``.

    The result has n_steps+1 points unless a coordinate becomes
    non-finite, in which case the trajectory is truncated there and
    flagged via ``diverged_at``.  Runs are deterministic: the same
    inputs give bit-identical output on the same platform.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}, expected one of {SCHEMES}")
    _check_step(h)
    if not isinstance(n_steps, int) or n_steps < 0:
        raise ValueError(f"n_steps must be a non-negative integer, got {n_steps!r}")
    x, y = float(s0[0]), float(s0[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"initial state must be finite, got ({x}, {y})")
    if scheme == MICKENS and (x < 0.0 or y < 0.0):
        raise ValueError(f"mickens requires a non-negative start, got ({x}, {y})")

    alpha, beta, gamma, delta = p.alpha, p.beta, p.gamma, p.delta
    if scheme == EULER:
        def advance(x, y):
            return _euler_map(alpha, beta, gamma, delta, h, x, y)
    elif scheme == RK4:
        def advance(x, y):
            return _rk4_map(alpha, beta, gamma, delta, h, x, y)
    else:
        phi_val = phi(h)
        if not (math.isfinite(phi_val) and phi_val > 0.0):
            raise ValueError(f"phi({h}) must be finite and > 0, got {phi_val!r}")

        def advance(x, y):
            return _mickens_map(alpha, beta, gamma, delta, phi_val, x, y)

    xs = [x]
    ys = [y]
    diverged_at = None
    for i in range(1, n_steps + 1):
        x, y = advance(x, y)
        if not (math.isfinite(x) and math.isfinite(y)):
            diverged_at = i
            break
        xs.append(x)
        ys.append(y)

    n = len(xs)
    times = np.arange(n, dtype=np.float64) * h
    states = np.column_stack([np.asarray(xs), np.asarray(ys)])
    return Trajectory(
        scheme=scheme, params=p, h=h, times=times, states=states, diverged_at=diverged_at
    )
