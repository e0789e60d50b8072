"""Test suite for grids and staggered fields."""

import numpy as np
import pytest

from nspnp_core.fields import GridSpec, ScalarField, VectorField


class TestGridSpec:
    def test_uniform_grid_geometry(self):
        grid = GridSpec.uniform(2, 16, length=2.0)

        assert grid.shape == (16, 16)
        assert grid.spacing == (0.125, 0.125)
        assert grid.h_min == 0.125
        assert grid.cell_volume == pytest.approx(0.015625)
        assert grid.volume == pytest.approx(4.0)
        np.testing.assert_allclose(grid.center, [1.0, 1.0])

    def test_face_counts_depend_on_boundary(self):
        periodic = GridSpec.uniform(2, 8)
        wall = GridSpec.uniform(2, 8, bc='wall')

        assert periodic.face_shape(0) == (8, 8)
        assert wall.face_shape(0) == (9, 8)
        assert wall.face_shape(1) == (8, 9)
        assert wall.face_coords(0)[-1] == pytest.approx(1.0)

    def test_cell_centers_are_offset_by_half_a_cell(self):
        grid = GridSpec.uniform(2, 8)

        np.testing.assert_allclose(grid.cell_centers(0)[:2], [0.0625, 0.1875])
        assert len(grid.node_coords(1)) == 9

    @pytest.mark.parametrize(
        'kwargs',
        [
            {'dims': 4, 'cells': (8,) * 4, 'lengths': (1.0,) * 4},
            {'dims': 2, 'cells': (8, 4), 'lengths': (1.0, 1.0)},
            {'dims': 2, 'cells': (8, 8), 'lengths': (1.0, 0.0)},
            {'dims': 3, 'cells': (8, 8), 'lengths': (1.0, 1.0)},
        ],
    )
    def test_invalid_grids_are_rejected(self, kwargs):
        with pytest.raises(ValueError):
            GridSpec(**kwargs)

    def test_grid_is_hashable_and_frozen(self):
        grid = GridSpec.uniform(3, 8)

        assert hash(grid) == hash(GridSpec.uniform(3, 8))
        with pytest.raises(Exception):
            grid.dims = 2

    def test_distance_to_boundary(self):
        grid = GridSpec(dims=2, cells=(8, 16), lengths=(1.0, 2.0))

        assert grid.distance_to_boundary((0.5, 1.0)) == pytest.approx(0.5)
        assert grid.distance_to_boundary((0.1, 1.0)) == pytest.approx(0.1)
        assert grid.contains((1.0, 2.0))
        assert not grid.contains((1.1, 0.5))

    def test_boundary_codes(self):
        assert GridSpec.uniform(2, 8).bc_code == 0
        assert GridSpec.uniform(2, 8, bc='wall').bc_code == 1
        assert GridSpec.bc_from_code(1) == 'wall'

        with pytest.raises(ValueError):
            GridSpec.bc_from_code(7)


class TestScalarField:
    def test_values_are_read_only_copies(self):
        grid = GridSpec.uniform(2, 8)
        source = np.ones(grid.shape)
        field = ScalarField(grid, source)
        source[0, 0] = 5.0

        assert field.values[0, 0] == 1.0
        with pytest.raises(ValueError):
            field.values[0, 0] = 2.0

    def test_flat_arrays_are_reshaped(self):
        grid = GridSpec.uniform(2, 8)

        field = ScalarField(grid, np.arange(64.0))

        assert field.values.shape == (8, 8)
        assert field.values[1, 0] == 8.0

    def test_wrong_shape_raises(self):
        grid = GridSpec.uniform(2, 8)

        with pytest.raises(ValueError) as excinfo:
            ScalarField(grid, np.zeros((8, 7)))

        assert 'expects shape (8, 8)' in str(excinfo.value)

    def test_non_finite_values_raise(self):
        grid = GridSpec.uniform(2, 8)
        values = np.zeros(grid.shape)
        values[2, 3] = np.nan

        with pytest.raises(ValueError) as excinfo:
            ScalarField(grid, values)

        assert 'non finite' in str(excinfo.value)

    def test_integral_and_arithmetic(self):
        grid = GridSpec.uniform(2, 8, length=2.0)
        field = ScalarField.constant(grid, 3.0)

        assert field.integral() == pytest.approx(12.0)
        assert (field - field).max_abs() == 0.0
        assert (2 * field).mean() == pytest.approx(6.0)
        assert (-field).min() == pytest.approx(-3.0)

    def test_from_function_samples_cell_centers(self):
        grid = GridSpec.uniform(2, 8)

        field = ScalarField.from_function(grid, lambda x, y: x + 10 * y)

        assert field.values[0, 0] == pytest.approx(0.0625 + 0.625)


class TestVectorField:
    def test_wall_grids_zero_the_normal_trace(self):
        grid = GridSpec.uniform(2, 8, bc='wall')

        field = VectorField.constant(grid, (1.0, 2.0))

        assert np.all(field[0][0, :] == 0.0)
        assert np.all(field[0][-1, :] == 0.0)
        assert np.all(field[1][:, 0] == 0.0)
        assert field[0][4, 4] == 1.0

    def test_component_count_is_checked(self):
        grid = GridSpec.uniform(3, 8)

        with pytest.raises(ValueError):
            VectorField(grid, (np.zeros(grid.face_shape(0)),) * 2)

    def test_dot_product_and_norm(self):
        grid = GridSpec.uniform(2, 8)
        field = VectorField.constant(grid, (3.0, 4.0))

        assert field.dot(field) == pytest.approx(25.0)
        assert field.norm_l2() == pytest.approx(5.0)
        assert field.max_abs() == 4.0

    def test_arithmetic_and_map(self):
        grid = GridSpec.uniform(2, 8)
        field = VectorField.constant(grid, (1.0, -1.0))

        doubled = field + field
        assert (doubled - 2 * field).max_abs() == 0.0
        assert (-field)[1][0, 0] == 1.0
        assert field.map(np.abs)[1][0, 0] == 1.0
