"""Initial condition presets.

Velocities come from a streamfunction sampled on the cell corners, so they
are discretely divergence free; on wall grids the streamfunction and its
normal derivative vanish on the walls. The negative species is rescaled to
the mass of the positive one, so every preset is charge neutral.
"""

from typing import Optional

import numpy as np

from nspnp_core.fields import (
    GridSpec,
    ScalarField,
    State,
    VectorField,
    solenoidal_from_streamfunction,
)
from nspnp_core.models.parameters import EllipticConfig
from nspnp_core.simulation.config import InitialSection
from nspnp_core.solvers import solve_neumann_poisson


def _normalised(u: VectorField, amplitude: float) -> VectorField:
    peak = u.max_abs()
    if peak == 0 or amplitude == 0:
        return VectorField.zeros(u.grid)
    return u * (amplitude / peak)


def taylor_green_velocity(grid: GridSpec, amplitude: float = 1.0) -> VectorField:
    """The vortex ``(sin x cos y, -cos x sin y)`` scaled to the box, in the (x, y) plane."""
    lx, ly = grid.lengths[0], grid.lengths[1]
    if grid.periodic:
        kx, ky = 2 * np.pi / lx, 2 * np.pi / ly

        def stream(x, y, *rest):
            return np.sin(kx * x) * np.sin(ky * y) / ky

    else:
        kx, ky = np.pi / lx, np.pi / ly

        def stream(x, y, *rest):
            return (np.sin(kx * x) * np.sin(ky * y)) ** 2 / ky

    return _normalised(solenoidal_from_streamfunction(grid, stream), amplitude)


def random_smooth_velocity(
    grid: GridSpec, amplitude: float, modes: int, rng: np.random.Generator
) -> VectorField:
    lx, ly = grid.lengths[0], grid.lengths[1]
    coefficients = rng.standard_normal((modes, modes))
    phases = rng.uniform(0, 2 * np.pi, (modes, modes, 2))

    def stream(x, y, *rest):
        total = np.zeros(np.broadcast(x, y).shape)
        for a in range(modes):
            for b in range(modes):
                if grid.periodic:
                    kx, ky = 2 * np.pi * (a + 1) / lx, 2 * np.pi * (b + 1) / ly
                    total += coefficients[a, b] * np.sin(kx * x + phases[a, b, 0]) * np.sin(
                        ky * y + phases[a, b, 1]
                    )
                else:
                    kx, ky = np.pi * (a + 1) / lx, np.pi * (b + 1) / ly
                    total += coefficients[a, b] * np.sin(kx * x) * np.sin(ky * y)
        if not grid.periodic:
            total *= (np.sin(np.pi * x / lx) * np.sin(np.pi * y / ly)) ** 2
        return total

    return _normalised(solenoidal_from_streamfunction(grid, stream), amplitude)


def _mode(grid: GridSpec, axis: int, k: int, coords: np.ndarray, phase: float = 0.0):
    if grid.periodic:
        return np.cos(2 * np.pi * k * coords / grid.lengths[axis] + phase)
    return np.cos(np.pi * k * coords / grid.lengths[axis])


def neutralise(n_plus: ScalarField, n_minus: ScalarField) -> ScalarField:
    """``n_minus`` rescaled to the mass of ``n_plus``; uniform when it carries no mass."""
    grid = n_plus.grid
    target = n_plus.integral()
    current = n_minus.integral()
    if current > 0:
        return n_minus * (target / current)
    return ScalarField.constant(grid, target / grid.volume)


def initial_charges(
    grid: GridSpec, initial: InitialSection, rng: Optional[np.random.Generator] = None
) -> tuple[ScalarField, ScalarField]:
    base = np.full(grid.shape, initial.background)
    mesh = grid.mesh()

    match initial.preset:
        case 'charged_blob':
            sigma = initial.width * min(grid.lengths)
            offset = sum((c - x0) ** 2 for c, x0 in zip(mesh, grid.center))
            plus = base + initial.charge * np.exp(-offset / (2 * sigma**2))
            minus = base
        case 'sinusoidal_charges':
            pattern = np.prod([_mode(grid, a, 1, mesh[a]) for a in range(grid.dims)], axis=0)
            plus = base + initial.charge * pattern
            minus = base - initial.charge * pattern
        case 'random_smooth':
            rng = rng if rng is not None else np.random.default_rng()
            fields = []
            for _ in range(2):
                total = np.zeros(grid.shape)
                for k in range(1, initial.modes + 1):
                    for a in range(grid.dims):
                        phase = rng.uniform(0, 2 * np.pi)
                        total += rng.standard_normal() * _mode(grid, a, k, mesh[a], phase)
                peak = np.max(np.abs(total))
                fields.append(base + initial.charge * (total / peak if peak > 0 else total))
            plus, minus = fields
        case _:
            return ScalarField.zeros(grid), ScalarField.zeros(grid)

    n_plus = ScalarField(grid, plus)
    return n_plus, neutralise(n_plus, ScalarField(grid, minus))


def initial_velocity(
    grid: GridSpec, initial: InitialSection, rng: Optional[np.random.Generator] = None
) -> VectorField:
    match initial.preset:
        case 'taylor_green':
            return taylor_green_velocity(grid, initial.velocity)
        case 'random_smooth':
            rng = rng if rng is not None else np.random.default_rng()
            return random_smooth_velocity(grid, initial.velocity, initial.modes, rng)
        case _:
            return VectorField.zeros(grid)


def potential(
    n_plus: ScalarField, n_minus: ScalarField, config: Optional[EllipticConfig] = None
) -> ScalarField:
    """Zero mean ``psi`` with ``-laplacian(psi) = n+ - n-``."""
    rho = n_plus - n_minus
    return ScalarField(n_plus.grid, solve_neumann_poisson(rho, config=config).values)


def initial_state(
    grid: GridSpec,
    initial: InitialSection,
    seed: int = 0,
    config: Optional[EllipticConfig] = None,
) -> State:
    """The state at ``t = 0``, with the potential of the initial charges."""
    rng = np.random.default_rng(seed)
    u = initial_velocity(grid, initial, rng)
    n_plus, n_minus = initial_charges(grid, initial, rng)
    return State(
        time=0.0,
        u=u,
        P=ScalarField.zeros(grid),
        n_plus=n_plus,
        n_minus=n_minus,
        psi=potential(n_plus, n_minus, config),
    )
