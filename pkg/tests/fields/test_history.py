"""Test suite for states, cylinders and field histories."""

import numpy as np
import pytest

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields import (
    FieldHistory,
    GridSpec,
    ParabolicCylinder,
    ScalarField,
    State,
    parabolic_distance,
)


@pytest.fixture
def grid():
    return GridSpec.uniform(2, 8)


def constant_history(grid, count=5, dt=0.1, value=1.0):
    return FieldHistory(
        State.zeros(grid, k * dt).replace(n_plus=ScalarField.constant(grid, value))
        for k in range(count)
    )


class TestParabolicCylinder:
    def test_time_interval(self):
        cyl = ParabolicCylinder((0.5, 0.5), 1.0, 0.25)

        assert cyl.t_start == pytest.approx(0.9375)
        assert cyl.scaled(2).radius == 0.5
        assert cyl.with_radius(0.1).x0 == (0.5, 0.5)

    def test_non_positive_radius_raises(self):
        with pytest.raises(ValueError):
            ParabolicCylinder((0.5, 0.5), 1.0, 0.0)

    def test_parabolic_distance_takes_the_larger_part(self):
        assert parabolic_distance((0, 0), 0.0, (0.3, 0.4), 0.01) == pytest.approx(0.5)
        assert parabolic_distance((0, 0), 0.0, (0.0, 0.1), 1.0) == pytest.approx(1.0)

    def test_interior_check(self, grid):
        assert ParabolicCylinder((0.5, 0.5), 0.0, 0.25).is_interior(grid)
        assert not ParabolicCylinder((0.2, 0.5), 0.0, 0.25).is_interior(grid)


class TestFieldHistory:
    def test_append_requires_increasing_uniform_times(self, grid):
        history = constant_history(grid, count=3)

        with pytest.raises(ValueError) as excinfo:
            history.append(State.zeros(grid, 0.2))
        assert 'must increase' in str(excinfo.value)

        with pytest.raises(ValueError) as excinfo:
            history.append(State.zeros(grid, 0.35))
        assert 'uniform' in str(excinfo.value)

    def test_all_slices_share_one_grid(self, grid):
        history = constant_history(grid, count=2)

        with pytest.raises(ValueError):
            history.append(State.zeros(GridSpec.uniform(2, 16), 0.2))

    def test_lookup_by_time(self, grid):
        history = constant_history(grid)

        assert history.dt == pytest.approx(0.1)
        assert history.index_of(0.3) == 3
        assert history.at(0.2).time == pytest.approx(0.2)

        with pytest.raises(CoverageException):
            history.at(0.25)
        with pytest.raises(CoverageException):
            history.at(1.0)

    def test_coverage(self, grid):
        history = constant_history(grid)

        assert history.covers(0.0, 0.4)
        assert not history.covers(-0.1, 0.2)

        with pytest.raises(CoverageException) as excinfo:
            history.require(0.1, 0.9, component='probe')
        assert excinfo.value.component == 'probe'
        assert excinfo.value.details['requested'] == (0.1, 0.9)

    def test_ring_buffer_drops_old_slices(self, grid):
        history = FieldHistory(max_length=3)
        for k in range(5):
            history.append(State.zeros(grid, 0.1 * k))

        assert len(history) == 3
        assert history.t_first == pytest.approx(0.2)
        assert history.t_last == pytest.approx(0.4)

    def test_indices_between_and_until(self, grid):
        history = constant_history(grid)

        assert list(history.indices_between(0.1, 0.3)) == [1, 2, 3]
        assert list(history.indices_between(0.1, 0.3, open_start=True)) == [2, 3]
        assert len(history.until(0.2)) == 3

    def test_time_integral_is_exact_for_linear_samples(self, grid):
        history = constant_history(grid)

        integral = history.time_integral(history.times, 0.05, 0.35)

        assert integral == pytest.approx((0.35**2 - 0.05**2) / 2)

    def test_density_stack_is_cached(self, grid):
        history = constant_history(grid, value=2.0)

        stack = history.density('n_plus', 2.0)

        assert stack.shape == (5, 8, 8)
        np.testing.assert_allclose(stack, 4.0)
        assert history.density('n_plus', 2.0) is stack

    def test_unknown_selector_raises(self, grid):
        history = constant_history(grid)

        with pytest.raises(ValueError) as excinfo:
            history.density('vorticity')

        assert 'Unknown field selector' in str(excinfo.value)

    def test_empty_history_has_no_grid(self):
        with pytest.raises(CoverageException):
            FieldHistory().grid
