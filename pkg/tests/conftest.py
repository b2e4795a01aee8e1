import numpy as np
import pytest

from lvlab import ModelParams, State

# Parameter set shared by the bundled presets and most worked examples.
STD = ModelParams(alpha=1.0, beta=0.1, gamma=0.075, delta=0.75)


@pytest.fixture(scope="session")
def std_params():
    return STD


def random_params(rng, lo=0.2, hi=2.0):
    """Log-uniform positive rates.

    The default range keeps delta/gamma and alpha/beta at most 10, so
    rounding in beta*(alpha/beta) etc. stays comfortably below the
    1e-13/1e-14 fixed-point residual budgets the tests assert.
    """
    a, b, g, d = np.exp(rng.uniform(np.log(lo), np.log(hi), size=4))
    return ModelParams(float(a), float(b), float(g), float(d))


def random_interior_state(rng, p, margin=1e-6):
    """A state strictly inside one of the four regions."""
    x_line = p.delta / p.gamma
    y_line = p.alpha / p.beta
    while True:
        x = float(rng.uniform(0.05, 4.0) * x_line)
        y = float(rng.uniform(0.05, 4.0) * y_line)
        if abs(x - x_line) > margin and abs(y - y_line) > margin:
            return State(x, y)


def central_diff_jacobian(f, s, eps=1e-6):
    """Central finite differences of a map R^2 -> R^2 at state s."""
    x, y = s
    fxp = f((x + eps, y))
    fxm = f((x - eps, y))
    fyp = f((x, y + eps))
    fym = f((x, y - eps))
    return (
        (fxp[0] - fxm[0]) / (2 * eps),
        (fyp[0] - fym[0]) / (2 * eps),
        (fxp[1] - fxm[1]) / (2 * eps),
        (fyp[1] - fym[1]) / (2 * eps),
    )


def eigen_set(pair):
    """Eigenvalues as an order-insensitive list of complex numbers."""
    return sorted((pair.lambda1, pair.lambda2), key=lambda z: (z.real, z.imag))
