"""Discrete calculus on the MAC grid.

The four staggering primitives act along one axis of an array and ignore
the layout along the others, so they compose into edge and corner
interpolations (used by the momentum advection and the Maxwell stress).
An array is either *centered* along an axis (``N`` entries) or *staggered*
(``N`` entries on periodic grids, ``N + 1`` on wall grids).

``laplacian`` is defined as ``divergence(gradient(f))``; the sparse matrices
assembled by the elliptic solvers reproduce it entry by entry.
"""

import numpy as np

from nspnp_core.fields.fields import ScalarField, VectorField
from nspnp_core.fields.grid import GridSpec


def _take(a: np.ndarray, axis: int, start, stop) -> np.ndarray:
    index = [slice(None)] * a.ndim
    index[axis] = slice(start, stop)
    return a[tuple(index)]


def _pad_ends(interior: np.ndarray, axis: int, first: np.ndarray, last: np.ndarray):
    return np.concatenate([first, interior, last], axis=axis)


def center_to_face(a: np.ndarray, axis: int, grid: GridSpec, boundary: str = 'nearest'):
    """Average a centered array onto the staggered positions along ``axis``.

    On wall grids the boundary faces take the adjacent cell value
    (``boundary='nearest'``) or zero (``boundary='zero'``).
    """
    if grid.periodic:
        return 0.5 * (a + np.roll(a, 1, axis=axis))
    interior = 0.5 * (_take(a, axis, 1, None) + _take(a, axis, None, -1))
    first = _take(a, axis, 0, 1)
    last = _take(a, axis, -1, None)
    if boundary == 'zero':
        first = np.zeros_like(first)
        last = np.zeros_like(last)
    return _pad_ends(interior, axis, first, last)


def face_to_center(a: np.ndarray, axis: int, grid: GridSpec) -> np.ndarray:
    """Average a staggered array back to the centered positions along ``axis``."""
    if grid.periodic:
        return 0.5 * (a + np.roll(a, -1, axis=axis))
    return 0.5 * (_take(a, axis, 1, None) + _take(a, axis, None, -1))


def diff_center_to_face(a: np.ndarray, axis: int, grid: GridSpec) -> np.ndarray:
    """Difference quotient from centers to staggered positions.

    Wall boundary entries are zero (homogeneous Neumann).
    """
    h = grid.spacing[axis]
    if grid.periodic:
        return (a - np.roll(a, 1, axis=axis)) / h
    interior = (_take(a, axis, 1, None) - _take(a, axis, None, -1)) / h
    zero = np.zeros_like(_take(a, axis, 0, 1))
    return _pad_ends(interior, axis, zero, zero)


def diff_face_to_center(a: np.ndarray, axis: int, grid: GridSpec) -> np.ndarray:
    """Difference quotient from staggered positions to centers."""
    h = grid.spacing[axis]
    if grid.periodic:
        return (np.roll(a, -1, axis=axis) - a) / h
    return (_take(a, axis, 1, None) - _take(a, axis, None, -1)) / h


def gradient(f: ScalarField) -> VectorField:
    """Face-normal differences of a centered field.

    On wall grids the boundary faces are zero, the no-flux condition of
    the scalars, so that ``divergence(gradient(f))`` is the Neumann Laplacian.
    """
    grid = f.grid
    return VectorField(
        grid, tuple(diff_center_to_face(f.values, a, grid) for a in range(grid.dims))
    )


def divergence(v: VectorField) -> ScalarField:
    grid = v.grid
    return ScalarField(
        grid, sum(diff_face_to_center(v[a], a, grid) for a in range(grid.dims))
    )


def laplacian(f: ScalarField) -> ScalarField:
    return divergence(gradient(f))


def face_laplacian(component: np.ndarray, axis: int, grid: GridSpec) -> np.ndarray:
    """Laplacian of the velocity component stored on the faces normal to ``axis``.

    On wall grids the component vanishes on the boundary faces along its own
    axis and is reflected with a sign change across the walls of the other
    axes (no slip). Boundary entries of the result are zero.
    """
    result = np.zeros_like(component)
    for b in range(grid.dims):
        h2 = grid.spacing[b] ** 2
        if grid.periodic:
            result += (
                np.roll(component, 1, axis=b)
                - 2.0 * component
                + np.roll(component, -1, axis=b)
            ) / h2
            continue
        if b == axis:
            padded = component
        else:
            first = -_take(component, b, 0, 1)
            last = -_take(component, b, -1, None)
            padded = _pad_ends(component, b, first, last)
        second = (
            _take(padded, b, 2, None)
            - 2.0 * _take(padded, b, 1, -1)
            + _take(padded, b, None, -2)
        ) / h2
        if b == axis:
            zero = np.zeros_like(_take(component, b, 0, 1))
            second = _pad_ends(second, b, zero, zero)
        result += second
    if not grid.periodic:
        for end in (0, -1):
            index = [slice(None)] * grid.dims
            index[axis] = end
            result[tuple(index)] = 0.0
    return result


def vector_laplacian(v: VectorField) -> VectorField:
    return VectorField(
        v.grid, tuple(face_laplacian(v[a], a, v.grid) for a in range(v.grid.dims))
    )


def velocity_at_centers(v: VectorField) -> tuple[np.ndarray, ...]:
    """Interpolate each component to the cell centers."""
    return tuple(face_to_center(v[a], a, v.grid) for a in range(v.grid.dims))


def velocity_gradient_squared(v: VectorField) -> np.ndarray:
    """Cell centered ``|grad u|^2``.

    Diagonal derivatives are exact at the centers. Each off-diagonal
    derivative ``d_j u_i`` lives on an edge and is averaged back to the
    centers as a square.
    """
    grid = v.grid
    total = np.zeros(grid.shape)
    for i in range(grid.dims):
        for j in range(grid.dims):
            if i == j:
                total += diff_face_to_center(v[i], i, grid) ** 2
                continue
            edge = _edge_derivative(v[i], i, j, grid)
            total += face_to_center(face_to_center(edge**2, i, grid), j, grid)
    return total


def _edge_derivative(component: np.ndarray, i: int, j: int, grid: GridSpec):
    """``d_j u_i`` on the edges staggered along both ``i`` and ``j``."""
    if grid.periodic:
        return diff_center_to_face(component, j, grid)
    h = grid.spacing[j]
    first = _take(component, j, 0, 1)
    last = _take(component, j, -1, None)
    # no slip: the wall value is zero, the half cell distance is h / 2
    interior = (_take(component, j, 1, None) - _take(component, j, None, -1)) / h
    return _pad_ends(interior, j, first / (0.5 * h), -last / (0.5 * h))


def dirichlet_energy(v: VectorField) -> float:
    """Integral of ``|grad u|^2``, equal to ``<u, -vector_laplacian(u)>``."""
    return float(np.sum(velocity_gradient_squared(v)) * v.grid.cell_volume)


def solenoidal_from_streamfunction(grid: GridSpec, streamfunction) -> VectorField:
    """Discretely divergence free field ``(d_y psi, -d_x psi, 0)``.

    ``streamfunction(*coords)`` is sampled at the cell corners of the
    (x, y) plane and at the cell centers along z, so the discrete divergence
    of the result vanishes to rounding. On wall grids the streamfunction
    should vanish on the x and y walls.
    """
    nodes = [grid.node_coords(0), grid.node_coords(1)]
    if grid.periodic:
        nodes = [n[:-1] for n in nodes]
    coords = nodes + [grid.cell_centers(a) for a in range(2, grid.dims)]
    psi = np.asarray(streamfunction(*np.meshgrid(*coords, indexing='ij')), dtype=np.float64)
    psi = np.broadcast_to(psi, tuple(len(c) for c in coords))
    hx, hy = grid.spacing[0], grid.spacing[1]
    if grid.periodic:
        ux = (np.roll(psi, -1, axis=1) - psi) / hy
        uy = -(np.roll(psi, -1, axis=0) - psi) / hx
    else:
        ux = (psi[:, 1:] - psi[:, :-1]) / hy
        uy = -(psi[1:, :] - psi[:-1, :]) / hx
    components = [ux, uy] + [np.zeros(grid.face_shape(a)) for a in range(2, grid.dims)]
    return VectorField(grid, tuple(components))
