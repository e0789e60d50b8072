"""Retarded mollification of the velocity history.

``theta`` averages the velocity over the lags ``epsilon < tau < 2 epsilon``
only, so its value at ``t`` never reads data newer than ``t - epsilon``.
``theta_hat`` shrinks the result away from the walls and removes its
divergence with a Neumann corrector, producing the drift of the
approximate system.
"""

from logging import Logger
from typing import Optional

import numpy as np
from scipy import ndimage
from scipy.interpolate import RegularGridInterpolator

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields import FieldHistory, GridSpec, VectorField, divergence, gradient
from nspnp_core.logging import resolve_logger
from nspnp_core.models.parameters import EllipticConfig
from nspnp_core.mollifier.kernel import MollifierSpec
from nspnp_core.solvers import solve_neumann_poisson


def theta(
    history: FieldHistory,
    t: float,
    spec: MollifierSpec,
    dt: Optional[float] = None,
    origin: Optional[float] = None,
) -> VectorField:
    """Retarded mollification of the velocity at time ``t``.

    Parameters
    ----------
    history : FieldHistory
        Velocity history with uniform spacing ``dt``
    t : float
        Evaluation time
    spec : MollifierSpec
        Kernel definition
    dt : float, optional
        Step of the history, read from the history when omitted
    origin : float, optional
        Start of the data; lags reaching before it read zero. Without an
        origin every lag must be stored.

    Raises
    ------
    CoverageException
        If a required slice is missing
    """
    if len(history) == 0:
        raise CoverageException('The history is empty.', 'mollifier')
    grid = history.grid
    dt = dt if dt is not None else history.dt
    if dt is None:
        raise CoverageException(
            'A single slice does not define a time step.', 'mollifier'
        )
    kernels = spec.lag_kernels(grid, dt)
    _check_kernel_fits(grid, kernels[0].weights.shape)

    mode = 'wrap' if grid.periodic else 'constant'
    accumulated = [np.zeros(grid.face_shape(a)) for a in range(grid.dims)]
    for kernel in kernels:
        sample_time = t - kernel.lag * dt
        if origin is not None and sample_time < origin - 1e-9 * dt:
            continue
        try:
            state = history.at(sample_time)
        except CoverageException as ex:
            raise CoverageException(
                f'Mollifier needs the slice at t={sample_time}.',
                'mollifier',
                {'t': t, 'lag': kernel.lag, **ex.details},
            ) from ex
        for axis in range(grid.dims):
            accumulated[axis] += ndimage.convolve(
                state.u[axis], kernel.weights, mode=mode, cval=0.0
            )
    return VectorField(grid, tuple(accumulated))


def _check_kernel_fits(grid: GridSpec, kernel_shape: tuple[int, ...]):
    for n, k in zip(grid.cells, kernel_shape):
        if k > n:
            raise ValueError(
                f'The mollifier support ({k} cells) exceeds the grid ({n} cells).'
            )


def shrink_map(grid: GridSpec, delta: float):
    """The dilation ``x -> c + s (x - c)`` with ``s = 1 + 2 delta / L_min``."""
    center = grid.center
    ratio = 1.0 + 2.0 * delta / min(grid.lengths)

    def apply(points: np.ndarray) -> np.ndarray:
        return center + ratio * (np.asarray(points) - center)

    return apply


def shrink_displacement(grid: GridSpec, delta: float) -> float:
    """``max |Phi(x) - x|`` over the cell centers."""
    points = np.stack([c.reshape(-1) for c in grid.mesh()], axis=-1)
    moved = shrink_map(grid, delta)(points)
    return float(np.max(np.linalg.norm(moved - points, axis=1)))


def shrink_compose(f: VectorField, delta: float) -> VectorField:
    """``f(Phi(x))`` by multilinear interpolation, zero where Phi leaves the box.

    The identity on periodic grids and for ``delta = 0``.
    """
    if delta < 0:
        raise ValueError(f'delta must be non negative, received [{delta}].')
    grid = f.grid
    if delta == 0 or grid.periodic:
        return f
    mapping = shrink_map(grid, delta)
    components = []
    for axis in range(grid.dims):
        coords = [
            grid.face_coords(a) if a == axis else grid.cell_centers(a)
            for a in range(grid.dims)
        ]
        interpolator = RegularGridInterpolator(
            coords, f[axis], method='linear', bounds_error=False, fill_value=0.0
        )
        targets = np.stack([c.reshape(-1) for c in grid.face_mesh(axis)], axis=-1)
        values = interpolator(mapping(targets))
        components.append(values.reshape(grid.face_shape(axis)))
    return VectorField(grid, tuple(components))


def theta_tilde(
    history: FieldHistory,
    t: float,
    spec: MollifierSpec,
    dt: Optional[float] = None,
    origin: Optional[float] = None,
) -> VectorField:
    """Mollified velocity pulled away from the walls."""
    return shrink_compose(theta(history, t, spec, dt, origin), spec.shrink_delta)


def divergence_correction(
    w: VectorField, config: Optional[EllipticConfig] = None
) -> VectorField:
    """``grad g`` with ``-laplacian(g) = div w`` and Neumann conditions."""
    grid = w.grid
    rhs = divergence(w)
    scale = w.max_abs() / grid.h_min
    g = solve_neumann_poisson(rhs, config=config, scale=scale)
    return gradient(g)


def theta_hat(
    history: FieldHistory,
    t: float,
    spec: MollifierSpec,
    dt: Optional[float] = None,
    origin: Optional[float] = None,
    config: Optional[EllipticConfig] = None,
    logger: Optional[Logger] = None,
) -> VectorField:
    """Divergence free drift: the shrunk mollification plus ``grad g``.

    The result has zero normal trace on wall grids and its divergence is
    bounded by the elliptic tolerance.
    """
    logger = resolve_logger(logger)
    w_tilde = theta_tilde(history, t, spec, dt, origin)
    if w_tilde.max_abs() == 0.0:
        return w_tilde
    w = w_tilde + divergence_correction(w_tilde, config)
    logger.debug(f'Drift at t={t:.6g}: max |w| = {w.max_abs():.3e}')
    return w
