"""Test suite for the parabolic rescaling of histories."""

import numpy as np
import pytest

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields import FieldHistory, GridSpec, ParabolicCylinder, ScalarField, State, VectorField
from nspnp_core.regularity import ckn, rescale

DT = 0.0125


@pytest.fixture
def history():
    grid = GridSpec.uniform(2, 32)
    u = VectorField.constant(grid, (1.0, 0.0))
    pressure = ScalarField.constant(grid, 2.0)
    return FieldHistory(
        State.zeros(grid, k * DT).replace(u=u, P=pressure) for k in range(9)
    )


def test_fields_scale_with_the_radius(history):
    result = rescale(history, (0.5, 0.5), 0.1, 0.5)
    image = result.history

    assert image.grid.lengths == (2.0, 2.0)
    assert image.grid.cells == (32, 32)
    assert len(image) == 9
    assert image.dt == pytest.approx(DT / 0.25)
    assert result.x0 == (1.0, 1.0)
    assert result.t0 == pytest.approx(0.4)
    np.testing.assert_allclose(image[4].u[0], 0.5)
    np.testing.assert_allclose(image[4].u[1], 0.0, atol=1e-15)
    np.testing.assert_allclose(image[4].P.values, 0.5)


def test_cylinder_averages_are_invariant(history):
    result = rescale(history, (0.5, 0.5), 0.1, 0.5)

    original = ckn(history, ParabolicCylinder((0.5, 0.5), 0.1, 0.25))
    image = ckn(result.history, ParabolicCylinder(result.x0, result.t0, 0.5))

    assert image.A == pytest.approx(original.A, rel=1e-9)
    assert image.C == pytest.approx(original.C, rel=1e-9)
    assert image.D == pytest.approx(original.D, rel=1e-9)


def test_custom_cells_and_time_step(history):
    result = rescale(history, (0.5, 0.5), 0.1, 0.5, cells=(16, 16), dt=0.1)

    assert result.history.grid.cells == (16, 16)
    assert len(result.history) == 5
    assert result.history.dt == pytest.approx(0.1)


def test_non_positive_radius_raises(history):
    with pytest.raises(ValueError):
        rescale(history, (0.5, 0.5), 0.1, 0.0)


def test_empty_history_raises():
    with pytest.raises(CoverageException):
        rescale(FieldHistory(), (0.5, 0.5), 0.1, 0.5)
