from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields.densities import magnitude
from nspnp_core.fields.fields import ScalarField, VectorField
from nspnp_core.fields.grid import GridSpec
from nspnp_core.fields.history import FieldHistory, ParabolicCylinder


@dataclass(frozen=True)
class Ball:
    center: tuple[float, ...]
    radius: float


class SpacetimeIntegral(NamedTuple):
    norm: float
    """The p-th root of the integral."""

    integral: float
    """The raw integral of ``|f|^p`` over the cylinder."""


def ball_mask(grid: GridSpec, center, radius: float) -> np.ndarray:
    """Cells whose center lies strictly inside the ball."""
    squared = np.zeros(grid.shape)
    for coord, c in zip(grid.mesh(), center):
        squared += (coord - c) ** 2
    return squared < radius**2


def ball_volume(dims: int, radius: float) -> float:
    """Volume of the Euclidean ball in 2 or 3 dimensions."""
    if dims == 2:
        return float(np.pi * radius**2)
    if dims == 3:
        return float(4.0 / 3.0 * np.pi * radius**3)
    raise ValueError(f'Unsupported dimension [{dims}].')


def _check_exponent(p: float):
    if p < 1:
        raise ValueError(f'The exponent p must be at least 1, received [{p}].')


def region_integral(
    values: np.ndarray, grid: GridSpec, region: Optional[Ball] = None
) -> float:
    """Midpoint rule for a cell centered array over the box or a ball."""
    if region is None:
        return float(np.sum(values) * grid.cell_volume)
    if grid.distance_to_boundary(region.center) < region.radius:
        raise ValueError('The ball must lie inside the domain.')
    mask = ball_mask(grid, region.center, region.radius)
    return float(np.sum(values[mask]) * grid.cell_volume)


def lp_norm(
    f: ScalarField | VectorField, p: float, region: Optional[Ball] = None
) -> float:
    """``(sum |f|^p * cell volume)^(1/p)`` over the box or a ball.

    Vector fields are measured through their cell centered interpolant.
    Cells cut by the ball boundary count when their center is inside.
    """
    _check_exponent(p)
    integral = region_integral(magnitude(f) ** p, f.grid, region)
    return float(integral ** (1.0 / p))


def spacetime_lp(
    history: FieldHistory, selector: str, p: float, cyl: ParabolicCylinder
) -> SpacetimeIntegral:
    """``||f||_{L^p(Q_r)}`` for a named quantity over a parabolic cylinder.

    The per-slice ball integrals of ``|f|^p`` are integrated in time with
    the trapezoid rule on their piecewise linear interpolant.
    """
    _check_exponent(p)
    history.require(cyl.t_start, cyl.t0, component='spacetime_lp')
    grid = history.grid
    if not cyl.is_interior(grid):
        raise CoverageException(
            'The cylinder leaves the computed domain.',
            'spacetime_lp',
            {'center': cyl.x0, 'radius': cyl.radius},
        )
    samples = ball_series(history, selector, p, cyl.x0, cyl.radius)
    integral = history.time_integral(samples, cyl.t_start, cyl.t0)
    return SpacetimeIntegral(float(integral ** (1.0 / p)), integral)


def ball_series(
    history: FieldHistory, selector: str, p: float, center, radius: float
) -> np.ndarray:
    """``int_{B_r} |f|^p`` for every slice of the history."""
    grid = history.grid
    mask = ball_mask(grid, center, radius)
    density = history.density(selector, p)
    return density[:, mask].sum(axis=1) * grid.cell_volume
