"""Continuous Lotka-Volterra model: parameters, vector field, fixed points.

The system is

    dx/dt = alpha*x - beta*x*y
    dy/dt = -delta*y + gamma*x*y

on the closed positive quadrant, with all four rates strictly positive.
Everything in this module is a pure function of its inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


class State(NamedTuple):
    """A (prey, predator) density pair.

    Coordinates are expected to be finite; callers that can produce
    non-finite values (a diverging explicit scheme) are responsible for
    detecting them.  Negative values are representable on purpose: the
    forward-Euler map generates them and the diagnostics layer needs to
    see them.
    """

    x: float
    y: float


@dataclass(frozen=True)
class ModelParams:
    """The four positive rates of the predator-prey system.

    alpha : prey growth rate (1/time)
    beta  : predation rate (1/(density*time))
    gamma : conversion rate (1/(density*time))
    delta : predator death rate (1/time)

    Construction rejects any value that is not a strictly positive
    finite real number.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            v = getattr(self, name)
            try:
                v = float(v)
            except (TypeError, ValueError):
                raise ValueError(f"{name} must be a real number, got {v!r}") from None
            if not math.isfinite(v) or v <= 0.0:
                raise ValueError(f"{name} must be finite and > 0, got {v!r}")
            object.__setattr__(self, name, v)


class Matrix2(NamedTuple):
    """Row-major 2x2 real matrix ((a, b), (c, d))."""

    a: float
    b: float
    c: float
    d: float

    @property
    def trace(self) -> float:
        return self.a + self.d

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def rows(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return ((self.a, self.b), (self.c, self.d))


class FixedPointPair(NamedTuple):
    """The two equilibria: total extinction and coexistence."""

    origin: State
    coexistence: State


def vector_field(p: ModelParams, s) -> tuple[float, float]:
    """Right-hand side (dx/dt, dy/dt) at state ``s``."""
    x, y = s
    return (p.alpha * x - p.beta * x * y, -p.delta * y + p.gamma * x * y)


def continuous_jacobian(p: ModelParams, s) -> Matrix2:
    """Jacobian of the vector field at state ``s``."""
    x, y = s
    return Matrix2(
        p.alpha - p.beta * y,
        -p.beta * x,
        p.gamma * y,
        p.gamma * x - p.delta,
    )


def fixed_points(p: ModelParams) -> FixedPointPair:
    """Both equilibria of the flow.

    These are simultaneously the fixed points of the Euler and Mickens
    one-step maps, so every scheme in this package shares them.
    """
    return FixedPointPair(
        origin=State(0.0, 0.0),
        coexistence=State(p.delta / p.gamma, p.alpha / p.beta),
    )


def first_integral(p: ModelParams, s) -> float:
    """Conserved quantity V(x, y) = gamma*x - delta*ln(x) + beta*y - alpha*ln(y).

    V is constant along exact solutions, strictly convex on the open
    positive quadrant, and minimal at the coexistence point.  It is used
    throughout the package as an orbit-closure oracle: a scheme whose
    iterates drift in V does not preserve the closed orbits.

    Raises ValueError if either coordinate is <= 0 (outside the domain
    of the logarithms).
    """
    x, y = s
    if not (x > 0.0 and y > 0.0):
        raise ValueError(
            f"first_integral is defined on the open positive quadrant, got ({x}, {y})"
        )
    return p.gamma * x - p.delta * math.log(x) + p.beta * y - p.alpha * math.log(y)
