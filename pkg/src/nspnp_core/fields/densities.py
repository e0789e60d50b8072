"""Cell centered magnitudes of the state quantities.

Every integral over a ball or a parabolic cylinder is computed from these
arrays by midpoint quadrature.
"""

from typing import Literal, get_args

import numpy as np

from nspnp_core.fields.fields import ScalarField, VectorField
from nspnp_core.fields.operators import (
    face_to_center,
    velocity_at_centers,
    velocity_gradient_squared,
    diff_center_to_face,
)

Selector = Literal['u', 'P', 'n_plus', 'n_minus', 'psi', 'rho', 'grad_u', 'grad_psi']

SELECTORS: tuple[str, ...] = get_args(Selector)


def magnitude(field: ScalarField | VectorField) -> np.ndarray:
    """Pointwise ``|f|`` at the cell centers."""
    if isinstance(field, ScalarField):
        return np.abs(field.values)
    centers = velocity_at_centers(field)
    return np.sqrt(sum(c**2 for c in centers))


def gradient_magnitude(f: ScalarField) -> np.ndarray:
    """``|grad f|`` at the cell centers, averaging the squared face derivatives."""
    grid = f.grid
    squared = sum(
        face_to_center(diff_center_to_face(f.values, a, grid) ** 2, a, grid)
        for a in range(grid.dims)
    )
    return np.sqrt(squared)


def state_magnitude(state, selector: str) -> np.ndarray:
    """Pointwise magnitude of a named quantity of a State."""
    if selector == 'u':
        return magnitude(state.u)
    if selector == 'P':
        return np.abs(state.P.values)
    if selector == 'n_plus':
        return np.abs(state.n_plus.values)
    if selector == 'n_minus':
        return np.abs(state.n_minus.values)
    if selector == 'psi':
        return np.abs(state.psi.values)
    if selector == 'rho':
        return np.abs(state.n_plus.values - state.n_minus.values)
    if selector == 'grad_u':
        return np.sqrt(velocity_gradient_squared(state.u))
    if selector == 'grad_psi':
        return gradient_magnitude(state.psi)
    raise ValueError(
        f'Unknown field selector [{selector}]. Expected one of {list(SELECTORS)}.'
    )
