"""One implicit-explicit step of the charge transport equations.

    n+_t + div(n+ w) - lap n+ =  div([n+]_+ grad psi)
    n-_t + div(n- w) - lap n- = -div([n-]_+ grad psi)

Drift and electric fluxes are explicit and in divergence form, diffusion is
implicit. With Neumann or periodic conditions every flux telescopes, so both
masses are conserved to rounding. The state itself is never clipped.
"""

from logging import Logger
from typing import Optional

import numpy as np

from nspnp_core.exceptions import StabilityException
from nspnp_core.fields import ScalarField, VectorField, divergence
from nspnp_core.fields.operators import (
    center_to_face,
    diff_center_to_face,
    diff_face_to_center,
)
from nspnp_core.logging import resolve_logger
from nspnp_core.models.parameters import EllipticConfig, NPStepParams
from nspnp_core.solvers import get_solver

GROWTH_GUARD = 10.0

DIVERGENCE_TOLERANCE = 1e-6


def face_values(
    n: np.ndarray, velocity: np.ndarray, axis: int, grid, scheme: str
) -> np.ndarray:
    """Density on the faces normal to ``axis`` for a flux moving with ``velocity``."""
    if scheme == 'centered':
        return center_to_face(n, axis, grid)
    if grid.periodic:
        behind = np.roll(n, 1, axis=axis)
        ahead = n
    else:
        behind = _shift_pad(n, axis, forward=True)
        ahead = _shift_pad(n, axis, forward=False)
    return np.where(velocity > 0, behind, ahead)


def _shift_pad(n: np.ndarray, axis: int, forward: bool) -> np.ndarray:
    """Cell value behind (``forward``) or ahead of each wall grid face."""
    index = [slice(None)] * n.ndim
    if forward:
        index[axis] = slice(0, 1)
        return np.concatenate([n[tuple(index)], n], axis=axis)
    index[axis] = slice(-1, None)
    return np.concatenate([n, n[tuple(index)]], axis=axis)


def drift_divergence(n: ScalarField, w: VectorField, scheme: str = 'centered') -> np.ndarray:
    """``div(n w)`` at the cell centers."""
    grid = n.grid
    total = np.zeros(grid.shape)
    for axis in range(grid.dims):
        flux = face_values(n.values, w[axis], axis, grid, scheme) * w[axis]
        total += diff_face_to_center(flux, axis, grid)
    return total


def electric_divergence(
    n: ScalarField, psi: ScalarField, sign: float, clip: bool = True, scheme: str = 'centered'
) -> np.ndarray:
    """``div([n]_+ grad psi)`` at the cell centers.

    The species moves with velocity ``-sign * grad psi``. A face whose donor
    cell (the cell the flux leaves) holds no positive density carries no
    flux, so the electric flux never extracts mass from negative regions.
    """
    grid = n.grid
    density = np.maximum(n.values, 0.0) if clip else n.values
    total = np.zeros(grid.shape)
    for axis in range(grid.dims):
        grad = diff_center_to_face(psi.values, axis, grid)
        velocity = -sign * grad
        face = face_values(density, velocity, axis, grid, scheme)
        if clip:
            donor = face_values(density, velocity, axis, grid, 'upwind')
            face = np.where(donor > 0, face, 0.0)
        total += diff_face_to_center(face * grad, axis, grid)
    return total


def np_step(
    n_plus: ScalarField,
    n_minus: ScalarField,
    w: VectorField,
    psi: ScalarField,
    params: NPStepParams,
    config: Optional[EllipticConfig] = None,
    logger: Optional[Logger] = None,
) -> tuple[ScalarField, ScalarField]:
    """Advance both species by ``params.dt``.

    Raises
    ------
    StabilityException
        If a density becomes non finite or its maximum grows more than
        tenfold in one step
    NoConvergenceException
        If an implicit diffusion solve fails
    """
    logger = resolve_logger(logger)
    grid = n_plus.grid
    dt = params.dt

    w_max = w.max_abs()
    if w_max > 0:
        if dt * w_max > grid.h_min:
            logger.warning(
                f'Drift CFL number {dt * w_max / grid.h_min:.2f} exceeds 1 (dt={dt})'
            )
        div_w = divergence(w).max_abs()
        if div_w > DIVERGENCE_TOLERANCE:
            logger.warning(f'Drift is not divergence free: max |div w| = {div_w:.3e}')

    solver = get_solver(config)
    updated = []
    for n, sign in ((n_plus, 1.0), (n_minus, -1.0)):
        explicit = n.values.copy()
        if w_max > 0:
            explicit -= dt * drift_divergence(n, w, params.advection)
        if psi.max_abs() > 0:
            explicit += (
                sign
                * dt
                * electric_divergence(n, psi, sign, params.clip_in_flux, params.advection)
            )
        _guard(explicit, n, 'nernst_planck')
        result = solver.helmholtz(ScalarField(grid, explicit), dt, 'neumann')
        _guard(result.values, n, 'nernst_planck')
        updated.append(ScalarField(grid, result.values))

    return updated[0], updated[1]


def _guard(values: np.ndarray, before: ScalarField, component: str):
    if not np.all(np.isfinite(values)):
        raise StabilityException('Density is no longer finite.', component)
    previous = before.max_abs()
    current = float(np.max(np.abs(values)))
    if previous > 0 and current > GROWTH_GUARD * previous:
        raise StabilityException(
            f'Density maximum grew from {previous:.3e} to {current:.3e} in one step.',
            component,
            {'before': previous, 'after': current},
        )


def lp_ledger(n_plus: ScalarField, n_minus: ScalarField, p: float) -> float:
    """``int(|n+|^p + |n-|^p)``."""
    if p < 2:
        raise ValueError(f'The ledger exponent must be at least 2, received [{p}].')
    vol = n_plus.grid.cell_volume
    return float(
        (np.sum(np.abs(n_plus.values) ** p) + np.sum(np.abs(n_minus.values) ** p)) * vol
    )


def lp_dissipation(n_plus: ScalarField, n_minus: ScalarField, p: float) -> float:
    """Diffusive loss rate of the ledger, ``p(p-1) int |n|^(p-2) |grad n|^2`` summed over species."""
    if p < 2:
        raise ValueError(f'The ledger exponent must be at least 2, received [{p}].')
    grid = n_plus.grid
    total = 0.0
    for n in (n_plus, n_minus):
        for axis in range(grid.dims):
            grad = diff_center_to_face(n.values, axis, grid)
            weight = center_to_face(np.abs(n.values) ** (p - 2), axis, grid)
            total += float(np.sum(weight * grad**2))
    return p * (p - 1) * total * grid.cell_volume
