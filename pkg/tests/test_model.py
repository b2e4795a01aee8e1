import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import STD, central_diff_jacobian, random_params
from lvlab import (
    RK4,
    ModelParams,
    State,
    continuous_jacobian,
    first_integral,
    fixed_points,
    simulate,
    vector_field,
)


class TestModelParams:
    @pytest.mark.parametrize("field", ["alpha", "beta", "gamma", "delta"])
    @pytest.mark.parametrize("bad", [0.0, -1.0, -1e-300, float("nan"), float("inf"), float("-inf")])
    def test_rejects_nonpositive_and_nonfinite(self, field, bad):
        kwargs = dict(alpha=1.0, beta=0.1, gamma=0.075, delta=0.75)
        kwargs[field] = bad
        with pytest.raises(ValueError):
            ModelParams(**kwargs)

    def test_rejects_non_numeric(self):
        with pytest.raises(ValueError):
            ModelParams("a", 0.1, 0.075, 0.75)

    def test_accepts_ints_and_normalizes(self):
        p = ModelParams(1, 1, 1, 2)
        assert isinstance(p.alpha, float) and p.delta == 2.0

    @given(v=st.floats(max_value=0.0, allow_nan=False))
    def test_any_nonpositive_alpha_rejected(self, v):
        with pytest.raises(ValueError):
            ModelParams(v, 0.1, 0.075, 0.75)


class TestVectorField:
    def test_coexistence_equilibrium(self):
        assert vector_field(STD, (10.0, 10.0)) == (0.0, 0.0)

    def test_extinction_equilibrium(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            assert vector_field(random_params(rng), (0.0, 0.0)) == (0.0, 0.0)

    def test_hand_value(self):
        # 1*5 - 0.1*25 = 2.5 ; -0.75*5 + 0.075*25 = -1.875
        assert vector_field(STD, (5.0, 5.0)) == (2.5, -1.875)

    def test_vanishes_at_fixed_points_random_params(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            p = random_params(rng)
            fp = fixed_points(p)
            for pt in (fp.origin, fp.coexistence):
                dx, dy = vector_field(p, pt)
                assert abs(dx) < 1e-14 and abs(dy) < 1e-14

    @given(
        x=st.floats(-1e6, 1e6, allow_nan=False),
        y=st.floats(-1e6, 1e6, allow_nan=False),
    )
    def test_axes_are_invariant(self, x, y):
        assert vector_field(STD, (0.0, y))[0] == 0.0
        assert vector_field(STD, (x, 0.0))[1] == 0.0


class TestContinuousJacobian:
    def test_at_origin(self):
        j = continuous_jacobian(STD, (0.0, 0.0))
        assert j.rows() == ((1.0, 0.0), (0.0, -0.75))

    def test_at_coexistence(self):
        # 0, -beta*delta/gamma ; alpha*gamma/beta, 0
        j = continuous_jacobian(STD, (10.0, 10.0))
        assert j.a == pytest.approx(0.0, abs=1e-15)
        assert j.b == pytest.approx(-1.0, rel=1e-15)
        assert j.c == pytest.approx(0.75, rel=1e-15)
        assert j.d == pytest.approx(0.0, abs=1e-15)

    def test_finite_difference_example_point(self):
        j = continuous_jacobian(STD, (3.0, 7.0))
        fd = central_diff_jacobian(lambda s: vector_field(STD, s), (3.0, 7.0))
        for got, want in zip(j, fd):
            assert got == pytest.approx(want, abs=1e-6)

    def test_finite_difference_random_states(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            p = random_params(rng)
            s = (float(rng.uniform(0.1, 20)), float(rng.uniform(0.1, 20)))
            j = continuous_jacobian(p, s)
            fd = central_diff_jacobian(lambda q: vector_field(p, q), s)
            for got, want in zip(j, fd):
                assert got == pytest.approx(want, abs=1e-6)


class TestFixedPoints:
    def test_std_params(self):
        fp = fixed_points(STD)
        assert fp.origin == State(0.0, 0.0)
        assert fp.coexistence == State(10.0, 10.0)

    def test_simple_params(self):
        fp = fixed_points(ModelParams(2, 1, 1, 2))
        assert fp.coexistence == State(2.0, 2.0)

    def test_vector_field_vanishes_at_coexistence(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            p = random_params(rng)
            dx, dy = vector_field(p, fixed_points(p).coexistence)
            assert abs(dx) < 1e-14 and abs(dy) < 1e-14


class TestFirstIntegral:
    def test_hand_value_at_coexistence(self):
        # 0.75 + 1 - 1.75*ln(10)
        assert first_integral(STD, (10.0, 10.0)) == pytest.approx(-2.27952391273958, rel=1e-15)

    def test_minimum_at_coexistence(self):
        rng = np.random.default_rng(5)
        v_min = first_integral(STD, fixed_points(STD).coexistence)
        for _ in range(1000):
            s = (float(rng.uniform(0.01, 60)), float(rng.uniform(0.01, 60)))
            assert first_integral(STD, s) >= v_min

    @pytest.mark.parametrize("s", [(0.0, 1.0), (1.0, 0.0), (-1.0, 1.0), (1.0, -2.0), (0.0, 0.0)])
    def test_domain_error_off_quadrant(self, s):
        with pytest.raises(ValueError):
            first_integral(STD, s)

    def test_gradient_orthogonal_to_vector_field(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            p = random_params(rng)
            x = float(rng.uniform(0.1, 20))
            y = float(rng.uniform(0.1, 20))
            gx = p.gamma - p.delta / x
            gy = p.beta - p.alpha / y
            dx, dy = vector_field(p, (x, y))
            assert abs(gx * dx + gy * dy) < 1e-12
            # finite-difference gradient agrees with the analytic one
            eps = 1e-6
            fdx = (first_integral(p, (x + eps, y)) - first_integral(p, (x - eps, y))) / (2 * eps)
            fdy = (first_integral(p, (x, y + eps)) - first_integral(p, (x, y - eps))) / (2 * eps)
            assert fdx == pytest.approx(gx, abs=1e-6)
            assert fdy == pytest.approx(gy, abs=1e-6)

    def test_constant_along_reference_trajectory(self):
        # V drift below 1e-6 relative over t in [0, 20] at h = 1e-3
        traj = simulate(RK4, STD, 1e-3, (5.0, 5.0), 20_000)
        v = np.array([first_integral(STD, (x, y)) for x, y in traj.states])
        assert np.max(np.abs(v - v[0])) / abs(v[0]) < 1e-6
