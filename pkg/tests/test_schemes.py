import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import STD, random_params
from lvlab import (
    EULER,
    MICKENS,
    PHI_FUNCTIONS,
    RK4,
    ModelParams,
    State,
    euler_step,
    first_integral,
    fixed_points,
    mickens_step,
    phi_expm1,
    phi_identity,
    rk4_step,
    simulate,
    vector_field,
)


class TestEulerStep:
    def test_hand_value(self):
        # 5 + 0.02*2.5 ; 5 + 0.02*(-1.875)
        assert euler_step(STD, 0.02, (5.0, 5.0)) == State(5.05, 4.9625)

    def test_fixed_point_is_fixed(self):
        assert euler_step(STD, 0.02, (10.0, 10.0)) == State(10.0, 10.0)
        rng = np.random.default_rng(10)
        for _ in range(50):
            p = random_params(rng)
            h = float(rng.uniform(1e-3, 0.5))
            fp = fixed_points(p)
            for pt in (fp.origin, fp.coexistence):
                nxt = euler_step(p, h, pt)
                assert abs(nxt.x - pt.x) < 1e-13 and abs(nxt.y - pt.y) < 1e-13

    def test_is_exactly_state_plus_h_times_field_dyadic(self):
        # exact-arithmetic configuration: every operation is dyadic
        p = ModelParams(2, 1, 1, 2)
        s = (2.0, 4.0)
        f = vector_field(p, s)
        nxt = euler_step(p, 0.25, s)
        assert (nxt.x - s[0], nxt.y - s[1]) == (0.25 * f[0], 0.25 * f[1])

    def test_matches_definition_generic(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            p = random_params(rng)
            h = float(rng.uniform(1e-4, 1.0))
            s = (float(rng.uniform(0.1, 30)), float(rng.uniform(0.1, 30)))
            f = vector_field(p, s)
            nxt = euler_step(p, h, s)
            assert nxt.x == pytest.approx(s[0] + h * f[0], rel=1e-14)
            assert nxt.y == pytest.approx(s[1] + h * f[1], rel=1e-14)

    @given(
        x=st.floats(-50, 50, allow_nan=False),
        y=st.floats(-50, 50, allow_nan=False),
        h=st.floats(1e-4, 2.0, allow_nan=False),
    )
    def test_no_sign_handling_pure_polynomial(self, x, y, h):
        # negative coordinates go straight through the polynomial formula
        p = STD
        nxt = euler_step(p, h, (x, y))
        assert nxt.x == x + h * (p.alpha * x - p.beta * x * y)
        assert nxt.y == y + h * (p.gamma * x * y - p.delta * y)

    def test_invalid_step_size(self):
        for h in (0.0, -0.1, float("nan"), float("inf")):
            with pytest.raises(ValueError):
                euler_step(STD, h, (1.0, 1.0))


class TestMickensStep:
    def test_hand_value(self):
        # frozen from an exact-rational evaluation of the two quotients
        nxt = mickens_step(STD, 0.01, (5.0, 5.0))
        assert nxt.x == pytest.approx(5.024630541871921, rel=1e-13)
        assert nxt.y == pytest.approx(4.981550264872435, rel=1e-13)

    def test_fixed_point_is_fixed(self):
        nxt = mickens_step(STD, 0.01, (10.0, 10.0))
        assert nxt.x == pytest.approx(10.0, abs=1e-14)
        assert nxt.y == pytest.approx(10.0, abs=1e-14)

    def test_sequential_equals_closed_form(self):
        # the y-update with the fresh x substituted equals the single
        # closed-form quotient to rounding
        rng = np.random.default_rng(12)
        for _ in range(500):
            p = random_params(rng, 0.1, 3.0)
            phi = float(rng.uniform(1e-3, 1.0))
            x = float(rng.uniform(0.01, 100))
            y = float(rng.uniform(0.01, 100))
            got = mickens_step(p, phi, (x, y))
            big_p = 2 * p.alpha * phi + 1
            q = 1 + p.alpha * phi + p.beta * phi * y
            x_closed = x * big_p / q
            y_closed = (2 * p.gamma * phi * x * y * big_p + y * q) / (
                (1 + p.delta * phi) * q + p.gamma * phi * x * big_p
            )
            assert got.x == pytest.approx(x_closed, rel=1e-14)
            assert got.y == pytest.approx(y_closed, rel=1e-14)

    @given(
        x=st.floats(1e-6, 100, allow_nan=False),
        y=st.floats(1e-6, 100, allow_nan=False),
        h=st.floats(1e-4, 1.0, allow_nan=False),
    )
    def test_positive_in_positive_out(self, x, y, h):
        nxt = mickens_step(STD, h, (x, y))
        assert nxt.x > 0.0 and nxt.y > 0.0

    def test_rejects_negative_state(self):
        with pytest.raises(ValueError):
            mickens_step(STD, 0.01, (-1.0, 5.0))
        with pytest.raises(ValueError):
            mickens_step(STD, 0.01, (5.0, -1e-12))

    def test_expm1_phi_option(self):
        nxt = mickens_step(STD, 0.01, (5.0, 5.0), phi=phi_expm1)
        assert nxt.x > 0.0 and nxt.y > 0.0
        assert nxt != mickens_step(STD, 0.01, (5.0, 5.0))


class TestPhiFunctions:
    def test_registry(self):
        assert set(PHI_FUNCTIONS) == {"identity", "expm1"}
        assert PHI_FUNCTIONS["identity"] is phi_identity
        assert PHI_FUNCTIONS["expm1"] is phi_expm1

    @pytest.mark.parametrize("name", ["identity", "expm1"])
    def test_h_plus_order_h_squared(self, name):
        # |phi(h)/h - 1| <= C*h on a decade grid with a finite fitted C
        phi = PHI_FUNCTIONS[name]
        hs = [10.0 ** (-k) for k in range(1, 7)]
        ratios = [abs(phi(h) / h - 1.0) / h for h in hs]
        assert all(math.isfinite(r) for r in ratios)
        assert max(ratios) <= 1.0
        assert all(phi(h) > 0.0 for h in hs)


class TestRk4Step:
    def test_fixed_point_is_fixed(self):
        assert rk4_step(STD, 0.02, (10.0, 10.0)) == State(10.0, 10.0)

    def test_order_four_by_step_halving(self):
        # global error at t=1 shrinks ~16x when h halves
        ref = simulate(RK4, STD, 1e-5, (5.0, 5.0), 100_000)

        def err(h):
            traj = simulate(RK4, STD, h, (5.0, 5.0), round(1.0 / h))
            return float(np.linalg.norm(traj.states[-1] - ref.states[-1]))

        ratio = err(0.05) / err(0.025)
        assert 12.0 <= ratio <= 20.0

    def test_first_integral_drift(self):
        traj = simulate(RK4, STD, 1e-3, (5.0, 5.0), 20_000)
        v = np.array([first_integral(STD, s) for s in traj.states])
        assert np.max(np.abs(v - v[0])) / abs(v[0]) < 1e-6


class TestSimulate:
    def test_zero_steps(self):
        traj = simulate(EULER, STD, 0.1, (3.0, 4.0), 0)
        assert traj.n_points == 1
        assert traj.state(0) == State(3.0, 4.0)
        assert traj.times[0] == 0.0

    def test_point_count_and_times(self):
        traj = simulate(MICKENS, STD, 0.01, (5.0, 5.0), 250)
        assert traj.n_points == 251
        assert np.array_equal(traj.times, np.arange(251) * 0.01)
        assert np.array_equal(traj.steps, np.arange(251))

    def test_deterministic_bit_identical(self):
        a = simulate(RK4, STD, 0.005, (5.0, 5.0), 2_000)
        b = simulate(RK4, STD, 0.005, (5.0, 5.0), 2_000)
        assert np.array_equal(a.states, b.states) and np.array_equal(a.times, b.times)

    @pytest.mark.parametrize("scheme,step_fn", [(EULER, euler_step), (RK4, rk4_step)])
    def test_matches_iterated_step_function(self, scheme, step_fn):
        traj = simulate(scheme, STD, 0.02, (5.0, 5.0), 200)
        s = State(5.0, 5.0)
        for i in range(1, 201):
            s = step_fn(STD, 0.02, s)
            assert (s.x, s.y) == (traj.states[i, 0], traj.states[i, 1])

    def test_matches_iterated_mickens_step(self):
        traj = simulate(MICKENS, STD, 0.02, (5.0, 5.0), 200, phi=phi_expm1)
        s = State(5.0, 5.0)
        for i in range(1, 201):
            s = mickens_step(STD, 0.02, s, phi=phi_expm1)
            assert (s.x, s.y) == (traj.states[i, 0], traj.states[i, 1])

    def test_euler_h003_goes_negative(self):
        traj = simulate(EULER, STD, 0.03, (5.0, 5.0), 10_000)
        assert (traj.x < 0.0).any()

    def test_mickens_stays_positive_long_run(self):
        traj = simulate(MICKENS, STD, 0.01, (5.0, 5.0), 100_000)
        assert traj.n_points == 100_001
        assert traj.states.min() > 0.0

    def test_divergence_truncates_and_flags(self):
        traj = simulate(EULER, STD, 10.0, (5.0, 5.0), 1_000)
        assert traj.diverged_at is not None
        assert traj.n_points == traj.diverged_at
        assert np.isfinite(traj.states).all()

    def test_mickens_rejects_negative_start(self):
        with pytest.raises(ValueError):
            simulate(MICKENS, STD, 0.01, (-1.0, 5.0), 10)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            simulate("heun", STD, 0.01, (1.0, 1.0), 10)
        with pytest.raises(ValueError):
            simulate(EULER, STD, -0.01, (1.0, 1.0), 10)
        with pytest.raises(ValueError):
            simulate(EULER, STD, 0.01, (1.0, 1.0), -1)
        with pytest.raises(ValueError):
            simulate(EULER, STD, 0.01, (float("nan"), 1.0), 10)


class TestFixedPointPreservation:
    @pytest.mark.parametrize("scheme", [EULER, MICKENS, RK4])
    def test_all_schemes_100_random_parameter_sets(self, scheme):
        rng = np.random.default_rng(13)
        for _ in range(100):
            p = random_params(rng)
            h = float(rng.uniform(1e-3, 0.5))
            fp = fixed_points(p)
            for pt in (fp.origin, fp.coexistence):
                traj = simulate(scheme, p, h, pt, 1)
                nxt = traj.state(1)
                assert abs(nxt.x - pt.x) < 1e-13
                assert abs(nxt.y - pt.y) < 1e-13


class TestMickensPositivitySweep:
    def test_1000_random_draws_10000_steps(self):
        # strict positivity of every iterate across the sampled box
        rng = np.random.default_rng(14)
        for _ in range(1000):
            p = random_params(rng, 0.1, 3.0)
            h = float(rng.uniform(1e-3, 1.0))
            s0 = (float(rng.uniform(1e-3, 100.0)), float(rng.uniform(1e-3, 100.0)))
            traj = simulate(MICKENS, p, h, s0, 10_000)
            assert traj.diverged_at is None
            assert traj.states.min() > 0.0
