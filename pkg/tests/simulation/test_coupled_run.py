"""Test suite for the block time marching of the coupled system."""

import numpy as np
import pytest

from nspnp_core.exceptions import StabilityException
from nspnp_core.fields import FieldHistory, VectorField, divergence
from nspnp_core.mollifier import theta_hat
from nspnp_core.simulation import advance, initial_state, parse_config, run
from nspnp_core.transport import kinetic_energy


def make_config(bc='periodic', preset='taylor_green', mollified=True, velocity=0.5, **time):
    return parse_config(
        {
            'grid': {'dims': 2, 'cells': [16, 16], 'lengths': [1.0, 1.0], 'bc': bc},
            'time': {
                't_end': 0.2,
                'dt': 0.025,
                'blocks': 2,
                'mollified': mollified,
                **time,
            },
            'initial': {'preset': preset, 'velocity': velocity, 'charge': 0.1},
            'output': {'write': False},
        }
    )


class TestRun:
    def test_every_step_is_emitted(self):
        config = make_config()
        seen = []

        history, ledger = run(config, on_snapshot=lambda index, state: seen.append(index))

        assert len(history) == 9
        assert seen == list(range(9))
        assert len(ledger.rows) == 9
        np.testing.assert_allclose([r.t for r in ledger.rows], np.arange(9) * 0.025)

    @pytest.mark.parametrize('bc', ['periodic', 'wall'])
    def test_masses_are_conserved(self, bc):
        config = make_config(bc=bc, preset='random_smooth')

        _, ledger = run(config)

        plus = [r.mass_nplus for r in ledger.rows]
        minus = [r.mass_nminus for r in ledger.rows]
        np.testing.assert_allclose(plus, plus[0], rtol=1e-10)
        np.testing.assert_allclose(minus, minus[0], rtol=1e-10)
        assert ledger.summary()['charge_imbalance'] < 1e-10

    def test_velocity_stays_solenoidal(self):
        config = make_config(bc='wall', preset='random_smooth')

        history, ledger = run(config)

        assert divergence(history.states[-1].u).max_abs() < 1e-6
        assert max(r.div_u_l2 for r in ledger.rows) < 1e-6

    def test_direct_mode_never_creates_energy(self):
        config = make_config(mollified=False)

        _, ledger = run(config)

        assert ledger.max_residual <= 1e-12
        assert ledger.is_monotone()
        assert ledger.dissipation_cum > 0

    def test_cfl_limit_stops_the_run(self):
        config = make_config(mollified=False, max_cfl=0.01)

        with pytest.raises(StabilityException) as excinfo:
            run(config)

        assert excinfo.value.component == 'simulation'
        assert excinfo.value.last_state.time == 0.0
        assert len(excinfo.value.history) == 1


class TestAdvance:
    def test_time_stamp(self):
        config = make_config(preset='sinusoidal_charges')
        state = initial_state(config.grid, config.initial)

        following = advance(state, state.u, config)

        assert following.time == pytest.approx(0.025)
        assert advance(state, state.u, config, time=1.0).time == 1.0

    def test_charges_at_rest_set_the_fluid_in_motion(self):
        config = make_config(preset='random_smooth', velocity=0.0)
        state = initial_state(config.grid, config.initial)

        assert state.u.max_abs() == 0.0
        assert kinetic_energy(advance(state, state.u, config).u) > 0


def l2_gap(a, b) -> float:
    velocity = a.u - b.u
    charges = (a.n_plus - b.n_plus).values, (a.n_minus - b.n_minus).values
    volume = a.grid.cell_volume
    return float(
        np.sqrt(velocity.dot(velocity) + sum(np.sum(c**2) for c in charges) * volume)
    )


class TestRetardation:
    def test_velocities_newer_than_epsilon_do_not_change_the_step(self):
        config = make_config(preset='random_smooth')
        history, _ = run(config)
        dt = config.time.dt
        states = history.states[:7]
        # slices in (t - epsilon, t] with t = 6 dt, epsilon = 4 dt
        shifted = VectorField.constant(config.grid, (1.0, 2.0))
        perturbed = states[:3] + [s.replace(u=s.u * -3.0 + shifted) for s in states[3:]]

        spec = config.mollifier_spec
        drift = theta_hat(FieldHistory(states), 6 * dt, spec, dt, 0.0, config.solver)
        changed = theta_hat(FieldHistory(perturbed), 6 * dt, spec, dt, 0.0, config.solver)
        stepped = advance(states[-1], changed, config, time=7 * dt)

        following = history.states[7]
        for axis in range(2):
            np.testing.assert_array_equal(changed[axis], drift[axis])
            np.testing.assert_array_equal(stepped.u[axis], following.u[axis])
        np.testing.assert_array_equal(stepped.n_plus.values, following.n_plus.values)
        np.testing.assert_array_equal(stepped.psi.values, following.psi.values)

    def test_mollified_run_approaches_the_direct_run(self):
        direct, _ = run(make_config(preset='random_smooth', mollified=False, dt=0.0125))

        gaps = []
        for blocks in (2, 4, 8):
            config = make_config(preset='random_smooth', dt=0.0125, blocks=blocks)
            mollified, _ = run(config)
            gaps.append(
                max(l2_gap(a, b) for a, b in zip(mollified.states, direct.states))
            )

        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 0.5 * gaps[0]
