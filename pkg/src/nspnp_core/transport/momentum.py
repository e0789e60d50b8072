"""One projection step of the linearised momentum equation.

    u_t + div(u (x) w) - lap u + grad P = f,   div u = 0

The advection is conservative and explicit, the viscous term implicit per
component and incompressibility is restored by a pressure projection. With
a divergence free drift the advection term exchanges no kinetic energy.
"""

from logging import Logger
from typing import Optional

import numpy as np

from nspnp_core.exceptions import StabilityException
from nspnp_core.fields import ScalarField, VectorField, divergence, gradient
from nspnp_core.fields.grid import GridSpec
from nspnp_core.fields.operators import (
    center_to_face,
    diff_center_to_face,
    diff_face_to_center,
    face_to_center,
)
from nspnp_core.logging import resolve_logger
from nspnp_core.models.parameters import EllipticConfig, ForceForm, NSStepParams
from nspnp_core.solvers import get_solver

GROWTH_GUARD = 10.0


def charge_gradient_force(
    n_plus: ScalarField, n_minus: ScalarField, psi: ScalarField
) -> VectorField:
    """``-(n+ - n-) grad psi`` with the charge averaged onto the faces."""
    grid = psi.grid
    rho = n_plus.values - n_minus.values
    return VectorField(
        grid,
        tuple(
            -center_to_face(rho, a, grid) * diff_center_to_face(psi.values, a, grid)
            for a in range(grid.dims)
        ),
    )


def maxwell_stress_force(psi: ScalarField) -> VectorField:
    """Divergence of ``grad psi (x) grad psi - |grad psi|^2 I / 2``.

    Diagonal stresses live at the cell centers, off-diagonal ones on the
    edges, so every derivative lands on the face of its component.
    """
    grid = psi.grid
    g = [
        face_to_center(diff_center_to_face(psi.values, a, grid), a, grid)
        for a in range(grid.dims)
    ]
    half_square = 0.5 * sum(c**2 for c in g)

    components = []
    for i in range(grid.dims):
        total = diff_center_to_face(g[i] ** 2 - half_square, i, grid)
        for j in range(grid.dims):
            if j == i:
                continue
            edge = center_to_face(center_to_face(g[i] * g[j], i, grid), j, grid)
            total = total + diff_face_to_center(edge, j, grid)
        components.append(total)
    return VectorField(grid, tuple(components))


def electro_force(
    n_plus: ScalarField,
    n_minus: ScalarField,
    psi: ScalarField,
    form: ForceForm = 'maxwell_stress',
) -> VectorField:
    """Electric body force on the faces.

    Both forms agree analytically when ``-laplacian(psi) = n+ - n-``; they
    differ discretely by terms that vanish at second order.
    """
    if form == 'charge_gradient':
        return charge_gradient_force(n_plus, n_minus, psi)
    if form == 'maxwell_stress':
        return maxwell_stress_force(psi)
    raise ValueError(f'Unknown force form [{form}].')


def _to_faces(
    values: np.ndarray,
    axis: int,
    grid: GridSpec,
    velocity: np.ndarray,
    scheme: str,
) -> np.ndarray:
    """Centered to staggered along ``axis``, the wall value being zero (no slip)."""
    if scheme == 'centered':
        return center_to_face(values, axis, grid, boundary='zero')
    if grid.periodic:
        behind = np.roll(values, 1, axis=axis)
        ahead = values
    else:
        zero = np.zeros_like(np.take(values, [0], axis=axis))
        behind = np.concatenate([zero, values], axis=axis)
        ahead = np.concatenate([values, zero], axis=axis)
    return np.where(velocity > 0, behind, ahead)


def _to_centers(
    values: np.ndarray,
    axis: int,
    grid: GridSpec,
    velocity: np.ndarray,
    scheme: str,
) -> np.ndarray:
    """Staggered to centered along ``axis``."""
    if scheme == 'centered':
        return face_to_center(values, axis, grid)
    if grid.periodic:
        behind = values
        ahead = np.roll(values, -1, axis=axis)
    else:
        size = values.shape[axis]
        behind = np.take(values, np.arange(size - 1), axis=axis)
        ahead = np.take(values, np.arange(1, size), axis=axis)
    return np.where(velocity > 0, behind, ahead)


def advection_divergence(
    u: VectorField, w: VectorField, scheme: str = 'centered'
) -> VectorField:
    """``div(u (x) w)`` on the faces of each component."""
    grid = u.grid
    components = []
    for i in range(grid.dims):
        total = np.zeros(grid.face_shape(i))
        for j in range(grid.dims):
            if j == i:
                carrier = face_to_center(w[i], i, grid)
                transported = _to_centers(u[i], i, grid, carrier, scheme)
                total += diff_center_to_face(transported * carrier, i, grid)
                continue
            carrier = center_to_face(w[j], i, grid)
            transported = _to_faces(u[i], j, grid, carrier, scheme)
            total += diff_face_to_center(transported * carrier, j, grid)
        components.append(total)
    return VectorField(grid, tuple(components))


def project(
    v: VectorField, config: Optional[EllipticConfig] = None
) -> tuple[VectorField, ScalarField]:
    """Remove the gradient part of ``v``.

    Returns the divergence free part and the potential ``phi`` with
    ``v = projected + grad phi``.
    """
    grid = v.grid
    scale = v.max_abs() / grid.h_min
    phi = get_solver(config).poisson(-divergence(v), scale=scale)
    phi = ScalarField(grid, phi.values)
    return v - gradient(phi), phi


def ns_step(
    u: VectorField,
    w: VectorField,
    force: VectorField,
    params: NSStepParams,
    config: Optional[EllipticConfig] = None,
    logger: Optional[Logger] = None,
) -> tuple[VectorField, ScalarField]:
    """Advance the velocity by ``params.dt`` and return it with the pressure.

    The pressure has zero mean and the new velocity is divergence free to
    the elliptic tolerance.

    Raises
    ------
    StabilityException
        If the velocity becomes non finite or grows beyond ten times the
        size of the previous velocity plus the forcing impulse
    NoConvergenceException
        If an implicit solve fails
    """
    logger = resolve_logger(logger)
    grid = u.grid
    dt = params.dt
    solver = get_solver(config)

    reference = u.max_abs() + dt * force.max_abs()

    explicit = [u[a] + dt * force[a] for a in range(grid.dims)]
    w_max = w.max_abs()
    if w_max > 0 and u.max_abs() > 0:
        if dt * w_max > grid.h_min:
            logger.warning(
                f'Momentum CFL number {dt * w_max / grid.h_min:.2f} exceeds 1 (dt={dt})'
            )
        advection = advection_divergence(u, w, params.advection)
        explicit = [explicit[a] - dt * advection[a] for a in range(grid.dims)]
    _guard(explicit, reference)

    diffused = VectorField(
        grid,
        tuple(
            solver.helmholtz_component(explicit[a], a, dt, grid).values
            for a in range(grid.dims)
        ),
    )

    scale = diffused.max_abs() / (grid.h_min * dt)
    phi = solver.poisson(divergence(diffused) * (-1.0 / dt), scale=scale)
    pressure = ScalarField(grid, phi.values)
    velocity = diffused - gradient(pressure) * dt

    _guard(velocity.components, reference)
    return velocity, pressure


def _guard(components, reference: float):
    if not all(np.all(np.isfinite(c)) for c in components):
        raise StabilityException('Velocity is no longer finite.', 'momentum')
    current = float(max(np.max(np.abs(c)) for c in components))
    if reference > 0 and current > GROWTH_GUARD * reference:
        raise StabilityException(
            f'Velocity maximum grew to {current:.3e} against a reference of {reference:.3e}.',
            'momentum',
            {'reference': reference, 'after': current},
        )


def kinetic_energy(u: VectorField) -> float:
    """``int |u|^2 / 2`` with the face inner product."""
    return 0.5 * u.dot(u)
