"""Test suite for the Picard iteration on charge trajectories."""

import math

import numpy as np
import pytest

from nspnp_core.exceptions import DegeneratePairException, MaxItersExceededException
from nspnp_core.fields import GridSpec, ScalarField, VectorField
from nspnp_core.fixed_point import (
    PicardProblem,
    YTState,
    contraction_ratio,
    find_contraction_horizon,
    fixed_point_gap,
    map_F,
    picard_solve,
)
from nspnp_core.models import PicardConfig
from nspnp_core.simulation import parse_config, run

DT = 1e-3


@pytest.fixture
def grid():
    return GridSpec.uniform(2, 8)


def bump(grid: GridSpec, amplitude: float) -> ScalarField:
    return ScalarField.from_function(
        grid, lambda x, y: 1.0 + amplitude * np.cos(2 * np.pi * x)
    )


@pytest.fixture
def neutral(grid):
    n0 = bump(grid, 0.3)
    return PicardProblem(n0, n0, DT, 4)


@pytest.fixture
def charged(grid):
    return PicardProblem(bump(grid, 0.3), bump(grid, -0.3), DT, 4)


def shifted(y: YTState, amount: float) -> YTState:
    grid = y.grid
    offset = ScalarField.constant(grid, amount)
    return y + YTState.constant_in_time(offset, offset, y.dt, y.steps)


class TestPicardProblem:
    def test_non_positive_dt_raises(self, grid):
        n0 = bump(grid, 0.1)

        with pytest.raises(ValueError) as excinfo:
            PicardProblem(n0, n0, 0.0, 4)

        assert 'dt must be positive' in str(excinfo.value)

    def test_at_least_one_step(self, grid):
        n0 = bump(grid, 0.1)

        with pytest.raises(ValueError) as excinfo:
            PicardProblem(n0, n0, DT, 0)

        assert 'At least one step' in str(excinfo.value)

    def test_drift_must_cover_the_horizon(self, grid):
        n0 = bump(grid, 0.1)

        with pytest.raises(ValueError) as excinfo:
            PicardProblem(n0, n0, DT, 4, drift=[VectorField.zeros(grid)] * 2)

        assert 'The drift covers 2 steps, 4 are required.' in str(excinfo.value)

    def test_with_steps(self, neutral):
        shorter = neutral.with_steps(2)

        assert shorter.steps == 2
        assert shorter.horizon == pytest.approx(2 * DT)
        assert shorter.n0_plus is neutral.n0_plus


class TestMapF:
    def test_output_starts_at_the_initial_charges(self, charged):
        y = map_F(charged.initial_trajectory(), charged)

        assert y.steps == 4
        np.testing.assert_array_equal(y.n_plus[0], charged.n0_plus.values)
        np.testing.assert_array_equal(y.n_minus[0], charged.n0_minus.values)

    def test_masses_are_conserved_along_the_trajectory(self, charged):
        y = map_F(charged.initial_trajectory(), charged)

        masses = y.n_plus.sum(axis=(1, 2))
        np.testing.assert_allclose(masses, masses[0], rtol=1e-12)

    def test_short_guess_raises(self, charged):
        with pytest.raises(ValueError):
            map_F(charged.initial_trajectory().truncate(2), charged)

    def test_only_the_charge_of_the_guess_matters(self, charged):
        y = charged.initial_trajectory()

        a = map_F(y, charged)
        b = map_F(shifted(y, 0.5), charged)

        np.testing.assert_allclose(a.n_plus, b.n_plus, atol=1e-12)


class TestContraction:
    def test_equal_charges_give_zero_ratio(self, neutral):
        y = neutral.initial_trajectory()

        assert contraction_ratio(y, shifted(y, 0.5), neutral) == 0.0

    def test_coinciding_trajectories_raise(self, charged):
        y = charged.initial_trajectory()

        with pytest.raises(DegeneratePairException) as excinfo:
            contraction_ratio(y, y, charged)

        assert excinfo.value.component == 'fixed_point'

    def test_short_horizon_contracts(self, grid, charged):
        rng = np.random.default_rng(11)
        y1 = YTState.random(grid, DT, 4, rng=rng)
        y2 = YTState.random(grid, DT, 4, rng=rng)

        ratio = contraction_ratio(y1, y2, charged)

        assert 0.0 < ratio < 1.0

    def test_horizon_search_keeps_a_passing_horizon(self, neutral):
        y = neutral.initial_trajectory()

        horizon = find_contraction_horizon(y, shifted(y, 0.5), neutral)

        assert horizon.steps == 4
        assert horizon.T == pytest.approx(4 * DT)
        assert horizon.ratio == 0.0
        assert len(horizon.trials) == 1


class TestPicardSolve:
    def test_neutral_problem_converges_on_the_second_iteration(self, neutral):
        y, records = picard_solve(neutral.initial_trajectory(), neutral)

        assert len(records) == 2
        assert math.isnan(records[0].ratio)
        assert records[0].yt_increment > 0
        assert records[1].yt_increment == 0.0
        assert records[1].T == pytest.approx(4 * DT)
        np.testing.assert_array_equal(y.n_plus, y.n_minus)

    def test_charged_problem_converges(self, charged):
        y, records = picard_solve(charged.initial_trajectory(), charged)

        assert y.steps == 4
        assert records[-1].yt_increment < 1e-7
        np.testing.assert_allclose(map_F(y, charged).n_plus, y.n_plus, atol=1e-8)

    def test_budget_exhaustion_carries_the_history(self, charged):
        with pytest.raises(MaxItersExceededException) as excinfo:
            picard_solve(charged.initial_trajectory(), charged, PicardConfig(max_iters=1))

        assert len(excinfo.value.records) == 1
        assert excinfo.value.details['iterations'] == 1

    def test_fixed_point_gap_is_zero_for_shifted_starts(self, neutral):
        y = neutral.initial_trajectory()

        assert fixed_point_gap([y, shifted(y, 0.5)], neutral) == 0.0


class TestHorizon:
    def test_selected_horizon_contracts_at_half(self, grid):
        problem = PicardProblem(bump(grid, 0.9), bump(grid, -0.9), 0.01, 64)
        rng = np.random.default_rng(5)
        y1 = YTState.random(grid, 0.01, 64, 2.0, rng)
        y2 = YTState.random(grid, 0.01, 64, 2.0, rng)

        horizon = find_contraction_horizon(y1, y2, problem)

        assert 1 <= horizon.steps <= 64
        assert horizon.ratio <= 0.5
        assert contraction_ratio(y1, y2, problem.with_steps(horizon.steps)) == pytest.approx(
            horizon.ratio
        )
        for trial in horizon.trials:
            if trial.ratio <= 0.5:
                assert trial.steps <= horizon.steps
            else:
                assert trial.steps > horizon.steps


class TestAgainstTheCoupledRun:
    def test_fixed_point_is_the_direct_charge_evolution(self):
        config = parse_config(
            {
                'seed': 2,
                'grid': {'dims': 2, 'cells': [16, 16], 'lengths': [1.0, 1.0]},
                'time': {'t_end': 0.05, 'dt': 0.00625, 'blocks': 1, 'mollified': False},
                'initial': {'preset': 'random_smooth', 'velocity': 0.5, 'charge': 0.5},
                'output': {'write': False},
            }
        )
        history, _ = run(config)
        states = history.states
        problem = PicardProblem(
            n0_plus=states[0].n_plus,
            n0_minus=states[0].n_minus,
            dt=config.time.dt,
            steps=config.steps,
            drift=[s.u for s in states[: config.steps]],
            clip_in_flux=config.physics.clip_in_flux,
            elliptic=config.solver,
        )

        y, _ = picard_solve(problem.initial_trajectory(), problem)

        assert y.steps == config.steps
        for k, state in enumerate(states):
            np.testing.assert_allclose(y.n_plus[k], state.n_plus.values, atol=1e-7)
            np.testing.assert_allclose(y.n_minus[k], state.n_minus.values, atol=1e-7)
