import math

import numpy as np
import pytest

from hyperfield.dnum import Double, J, conj, norm_sq, polar_decompose
from hyperfield.errors import CFLViolation, NonCausalSegment, SuperluminalFrame
from hyperfield.srt import (
    CoVector,
    Frame,
    ParticleState,
    component_rule_check,
    compose_velocity,
    conjugation_table_check,
    conjugation_tables_check,
    continuity_residual,
    cross,
    dynamics_run,
    frame_component,
    gauss_residual,
    gauss_solve,
    lorentz_force_run,
    lorentz_force_step,
    maxwell_1d_step,
    natural_parametrize,
    project,
    reconstruct,
    sigma_I,
    sigma_t,
    sigma_x,
    spinor_conjugate,
    star,
    star_cross,
    vector_conjugate,
)

from conftest import random_double


class TestStarCross:
    def test_unit_vectors(self):
        assert star_cross(Double(1, 0), Double(1, 0)) == (1.0, 0.0)
        assert star(Double(0, 1), Double(0, 1)) == -1.0

    def test_boost_scaling(self, rng):
        for _ in range(50):
            a = random_double(rng)
            h1, h2 = random_double(rng), random_double(rng)
            factor = a.t**2 - a.x**2
            assert star(a * h1, a * h2) == pytest.approx(factor * star(h1, h2), abs=1e-10)
            assert cross(a * h1, a * h2) == pytest.approx(factor * cross(h1, h2), abs=1e-10)

    def test_matches_algebra_product(self, rng):
        for _ in range(50):
            h1, h2 = random_double(rng), random_double(rng)
            prod = h1 * conj(h2)
            assert star(h1, h2) == pytest.approx(prod.t, abs=1e-12)
            assert cross(h1, h2) == pytest.approx(-prod.x, abs=1e-12)


class TestConjugations:
    def test_component_rules(self):
        h = Double(1.0, 0.0)
        assert vector_conjugate(h) == CoVector(1.0, 0.0)
        assert spinor_conjugate(h) == CoVector(0.0, 1.0)
        assert component_rule_check(Double(2.3, -0.7)) == 0.0

    def test_eight_identities(self, rng):
        pairs = [(random_double(rng, 3.0), random_double(rng, 3.0)) for _ in range(200)]
        assert conjugation_table_check(pairs) < 1e-12

    def test_report_op(self):
        report = conjugation_tables_check()
        assert report["identities"] < 1e-12
        assert report["component_rules"] == 0.0

    def test_discrete_ops_algebraic_forms(self, rng):
        for _ in range(20):
            h = random_double(rng)
            assert sigma_x(h) == conj(h)
            assert sigma_t(h) == -conj(h)
            assert sigma_I(h) == J * h


class TestFrames:
    def test_unit_norms(self, rng):
        for _ in range(100):
            v = float(rng.uniform(-0.99, 0.99))
            fr = Frame(v)
            assert star(fr.tau, fr.tau) == pytest.approx(1.0, abs=1e-12)
            assert star(fr.s, fr.s) == pytest.approx(-1.0, abs=1e-12)
            assert star(fr.tau, fr.s) == pytest.approx(0.0, abs=1e-12)

    def test_superluminal_rejected(self):
        with pytest.raises(SuperluminalFrame):
            Frame(1.0)
        with pytest.raises(SuperluminalFrame):
            Frame(-1.2)

    def test_rest_frame_projections(self):
        assert project(Frame(0.0), Double(1.5, -0.5)) == (1.5, -0.5)

    def test_time_dilation(self):
        hT, _ = project(Frame(0.6), Double(1, 0))
        assert hT == pytest.approx(1.25, rel=1e-14)

    def test_interval_invariance(self, rng):
        for _ in range(100):
            v = float(rng.uniform(-0.95, 0.95))
            h = random_double(rng, 3.0)
            hT, hX = project(Frame(v), h)
            assert hT * hT - hX * hX == pytest.approx(norm_sq(h), abs=1e-10)

    def test_identity_decomposition(self, rng):
        for _ in range(50):
            v = float(rng.uniform(-0.9, 0.9))
            h = random_double(rng)
            hT, hX = project(Frame(v), h)
            back = reconstruct(Frame(v), hT, hX)
            assert abs(back - h) < 1e-12

    def test_component_classification(self):
        fr = Frame(0.5)
        assert frame_component(fr.tau) == "causal-up"
        tau = fr.tau
        assert frame_component(CoVector(-tau.T, tau.X)) == "causal-down"
        assert frame_component(CoVector(tau.X, tau.T)) == "acausal-up"

    def test_discrete_ops_map_components(self):
        # sigma_t, sigma_I and sigma_x.sigma_I send the causal-up class onto
        # the other three components
        fr = Frame(-0.3)
        tau = fr.tau

        def as_event(om):
            return Double(om.T, om.X)

        def as_covector(h):
            return CoVector(h.t, h.x)

        t_img = as_covector(sigma_t(as_event(tau)))
        i_img = as_covector(sigma_I(as_event(tau)))
        xi_img = as_covector(sigma_x(sigma_I(as_event(tau))))
        assert frame_component(t_img) == "causal-down"
        assert frame_component(i_img) == "acausal-up"
        assert frame_component(xi_img) == "acausal-down"

    def test_active_passive_consistency(self, rng):
        # boosting the event and projecting onto the boosted frame returns
        # the original coordinates
        for _ in range(100):
            v = float(rng.uniform(-0.9, 0.9))
            h = random_double(rng)
            fr = Frame(v)
            boosted = fr.boost_element() * h
            hT, hX = project(fr, boosted)
            assert hT == pytest.approx(h.t, abs=1e-10)
            assert hX == pytest.approx(h.x, abs=1e-10)

    def test_boost_is_polar_rotation(self, rng):
        for _ in range(50):
            v = float(rng.uniform(-0.9, 0.9))
            fr = Frame(v)
            h = Double(2.0, 0.5)
            p0 = polar_decompose(h)
            p1 = polar_decompose(fr.boost_element() * h)
            assert p1.psi - p0.psi == pytest.approx(fr.rapidity, abs=1e-12)
            assert norm_sq(fr.boost_element() * h) == pytest.approx(
                norm_sq(h), rel=1e-12
            )


class TestVelocityComposition:
    def test_half_plus_half(self):
        assert compose_velocity(0.5, 0.5) == pytest.approx(0.8, abs=1e-15)

    def test_identity_and_inverse(self, rng):
        for _ in range(20):
            v = float(rng.uniform(-0.95, 0.95))
            assert compose_velocity(v, 0.0) == pytest.approx(v, abs=1e-15)
            assert compose_velocity(v, -v) == pytest.approx(0.0, abs=1e-14)

    def test_matches_rapidity_addition(self, rng):
        for _ in range(50):
            v1 = float(rng.uniform(-0.9, 0.9))
            v2 = float(rng.uniform(-0.9, 0.9))
            want = math.tanh(math.atanh(v1) + math.atanh(v2))
            assert compose_velocity(v1, v2) == pytest.approx(want, abs=1e-14)


class TestNaturalParametrization:
    def test_rest_particle(self):
        line = [(w, Double(w, 0.3)) for w in np.linspace(0, 2, 21)]
        states = natural_parametrize(line, 1.0)
        for _, st in states:
            assert abs(st.velocity_2 - Double(1, 0)) < 1e-12

    def test_uniform_velocity(self):
        line = [(w, Double(w, 0.6 * w)) for w in np.linspace(0, 2, 21)]
        states = natural_parametrize(line, 2.0)
        for _, st in states:
            assert st.velocity_2.t == pytest.approx(1.25, rel=1e-12)
            assert st.velocity_2.x == pytest.approx(0.75, rel=1e-12)
        # proper time accumulates at rate sqrt(1 - v^2)
        assert states[-1][0] == pytest.approx(2.0 * 0.8, rel=1e-12)

    def test_normalization_along_curved_line(self):
        line = [(w, Double(w, 0.3 * math.sin(w))) for w in np.linspace(0, 3, 301)]
        states = natural_parametrize(line, 1.0)
        for _, st in states:
            assert abs(star(st.velocity_2, st.velocity_2) - 1.0) < 1e-10

    def test_non_causal_rejected(self):
        line = [(w, Double(w, 1.5 * w)) for w in np.linspace(0, 1, 11)]
        with pytest.raises(NonCausalSegment):
            natural_parametrize(line, 1.0)


class TestDynamics:
    def test_zero_force(self):
        state = ParticleState(Double(0, 0), Double(1, 0), 1.0)
        traj = dynamics_run(state, 0.0, 1e-3, 100)
        assert np.allclose(traj[:, 1], 1.0)
        assert np.allclose(traj[:, 2], 0.0)

    def test_constant_force_rapidity(self):
        state = ParticleState(Double(0, 0), Double(1, 0), 1.0)
        traj = dynamics_run(state, 1.0, 1e-3, 1000)  # f s / m = 1
        v = traj[-1, 2] / traj[-1, 1]
        assert v == pytest.approx(math.tanh(1.0), abs=1e-8)

    def test_momentum_norm_preserved(self):
        state = ParticleState(Double(0, 0), Double(1, 0), 2.0)
        traj = dynamics_run(state, 0.7, 1e-3, 5000)
        psq = traj[:, 1] ** 2 - traj[:, 2] ** 2
        assert np.max(np.abs(psq - 4.0)) < 1e-9

    def test_energy_power_balance(self):
        m, f, ds = 1.0, 0.8, 1e-3
        state = ParticleState(Double(0, 0), Double(1, 0), m)
        traj = dynamics_run(state, f, ds, 2000)
        # dE/dt = v f: E = P_t, dt = gamma ds
        e = traj[:, 1]
        v = traj[:, 2] / traj[:, 1]
        gamma = 1.0 / np.sqrt(1 - v**2)
        de_ds = np.gradient(e, ds)
        power = v * f * gamma  # dE/ds = (dE/dt)(dt/ds)
        assert np.max(np.abs(de_ds[2:-2] - power[2:-2])) < 1e-4


class TestLorentzForce:
    def test_zero_field_geodesic(self):
        state = ParticleState(Double(0, 0), Double(1.25, 0.75), 1.0)
        traj = lorentz_force_run(state, 1.0, 0.0, 1e-3, 100)
        assert np.allclose(traj[:, 3], 1.25)
        assert np.allclose(traj[:, 4], 0.75)

    def test_constant_field_rapidity_linear(self):
        state = ParticleState(Double(0, 0), Double(1, 0), 1.0)
        traj = lorentz_force_run(state, 1.0, 1.0, 1e-3, 1000)
        v = traj[-1, 4] / traj[-1, 3]
        assert v == pytest.approx(math.tanh(1.0), abs=1e-8)

    def test_norm_drift_small_over_1e4_steps(self):
        state = ParticleState(Double(0, 0), Double(1, 0), 1.0)
        traj = lorentz_force_run(state, 1.0, 0.3, 1e-3, 10_000)
        vsq = traj[:, 3] ** 2 - traj[:, 4] ** 2
        assert np.max(np.abs(vsq - 1.0)) < 1e-10

    def test_step_matches_run(self):
        state = ParticleState(Double(0, 0), Double(1, 0), 1.0)
        stepped = state
        for _ in range(10):
            stepped = lorentz_force_step(stepped, 1.0, lambda h: 0.5, 1e-3)
        traj = lorentz_force_run(state, 1.0, 0.5, 1e-3, 10)
        assert stepped.velocity_2.t == pytest.approx(traj[-1, 3], abs=1e-14)
        assert stepped.velocity_2.x == pytest.approx(traj[-1, 4], abs=1e-14)

    def test_position_dependent_field_runs(self):
        state = ParticleState(Double(0, 0), Double(1, 0), 1.0)
        st = state
        for _ in range(100):
            st = lorentz_force_step(st, 1.0, lambda h: 0.1 * h.t, 1e-3)
        assert abs(star(st.velocity_2, st.velocity_2) - 1.0) < 1e-12


class TestMaxwell:
    def test_no_charge_static(self):
        E = np.sin(np.linspace(0, 2 * math.pi, 64, endpoint=False))
        rho = np.zeros(64)
        v = np.zeros(64)
        out = maxwell_1d_step(E, rho, v, 1e-3, 1e-2)
        assert np.array_equal(out, E)

    def test_cfl_enforced(self):
        E = np.zeros(8)
        with pytest.raises(CFLViolation):
            maxwell_1d_step(E, E, E, 2e-2, 1e-2)

    def test_static_uniform_slope(self):
        n = 1000
        dx = 1.0 / n
        rho0 = 0.7
        E = gauss_solve(np.full(n, rho0), dx)
        slope = np.polyfit(dx * np.arange(n), E, 1)[0]
        assert slope == pytest.approx(2 * math.pi * rho0, rel=1e-6)
        # interior residual of the Gauss law
        res = gauss_residual(E, np.full(n, rho0), dx)
        assert np.max(np.abs(res[1:-1])) < 1e-6

    def test_continuity_translating_blob(self):
        n = 512
        dx = 1.0 / n
        dt = dx  # CFL equality: discrete transport is exact
        x = dx * np.arange(n)
        c = 1.0

        def blob(shift):
            # periodic gaussian bump
            d = (x - 0.5 - shift + 0.5) % 1.0 - 0.5
            return np.exp(-(d**2) / (2 * 0.05**2))

        rho_prev = blob(-c * dt)
        rho_now = blob(0.0)
        rho_next = blob(c * dt)
        res = continuity_residual(rho_prev, rho_next, rho_now * c, dt, dx)
        assert np.max(np.abs(res)) < 1e-8

    def test_evolution_consistency(self):
        # uniform rho, uniform v: E decreases uniformly at rate 2 pi rho v
        n = 128
        E = np.zeros(n)
        rho = np.full(n, 0.3)
        v = np.full(n, 0.5)
        out = maxwell_1d_step(E, rho, v, 1e-3, 1e-2)
        assert np.allclose(out, -1e-3 * 2 * math.pi * 0.15)
