"""Parabolic rescaling of a history.

The rescaled fields are

    u~(X, s) = r0 u(x, t)     P~ = r0^2 P     n~ = n     psi~ = psi

with ``x = x0 + r0 (X - X0)`` and ``t = t0 + r0^2 (s - s0)``. The image box
starts at the origin like every grid, so the point ``(x0, t0)`` lands on
``(X0, s0) = (x0 / r0, t0 / r0^2)``.
"""

from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from nspnp_core.exceptions import CoverageException
from nspnp_core.fields import FieldHistory, GridSpec, ScalarField, State, VectorField


class RescaledHistory(NamedTuple):
    history: FieldHistory
    x0: tuple[float, ...]
    """Image of the rescaling center."""

    t0: float


def _resample(values: np.ndarray, source_coords, target_points, target_shape):
    interpolator = RegularGridInterpolator(
        source_coords, values, method='linear', bounds_error=False, fill_value=None
    )
    return interpolator(target_points).reshape(target_shape)


def _points(mesh: tuple[np.ndarray, ...], scale: float) -> np.ndarray:
    return np.stack([c.reshape(-1) * scale for c in mesh], axis=-1)


def _slice_at(history: FieldHistory, t: float) -> tuple[State, State, float]:
    """The bracketing slices of ``t`` and the weight of the later one."""
    times = history.times
    tol = 1e-9 * (history.dt or 1.0)
    if t < times[0] - tol or t > times[-1] + tol:
        raise CoverageException(
            f'The rescaled window needs t={t}.',
            'rescale',
            {'available': (float(times[0]), float(times[-1]))},
        )
    upper = int(np.clip(np.searchsorted(times, t - tol), 0, len(times) - 1))
    if abs(times[upper] - t) <= tol or upper == 0:
        return history[upper], history[upper], 0.0
    lower = upper - 1
    weight = (t - times[lower]) / (times[upper] - times[lower])
    return history[lower], history[upper], float(weight)


def rescale(
    history: FieldHistory,
    x0: Sequence[float],
    t0: float,
    r0: float,
    cells: Optional[Sequence[int]] = None,
    dt: Optional[float] = None,
) -> RescaledHistory:
    """Resample the history in the rescaled frame around ``(x0, t0)``.

    The image grid keeps the cell counts unless ``cells`` is given and its
    time step is ``dt / r0^2`` unless ``dt`` is given. Values come from
    multilinear interpolation in space and linear interpolation in time.

    Raises
    ------
    ValueError
        If r0 is not positive
    CoverageException
        If a target time falls outside the source history
    """
    if not r0 > 0:
        raise ValueError(f'r0 must be positive, received [{r0}].')
    if len(history) == 0:
        raise CoverageException('The history is empty.', 'rescale')
    source = history.grid
    grid = GridSpec(
        dims=source.dims,
        cells=tuple(cells) if cells is not None else source.cells,
        lengths=tuple(length / r0 for length in source.lengths),
        bc=source.bc,
    )
    step = dt if dt is not None else (history.dt or 1.0) / r0**2
    s_first, s_last = history.t_first / r0**2, history.t_last / r0**2
    count = int(np.floor((s_last - s_first) / step * (1 + 1e-12))) + 1

    center_coords = [source.cell_centers(a) for a in range(source.dims)]
    center_points = _points(grid.mesh(), r0)

    def sample(state: State) -> dict:
        fields = {
            'u': tuple(
                r0
                * _resample(
                    state.u[a],
                    [
                        source.face_coords(b) if b == a else source.cell_centers(b)
                        for b in range(source.dims)
                    ],
                    _points(grid.face_mesh(a), r0),
                    grid.face_shape(a),
                )
                for a in range(source.dims)
            ),
        }
        for name, factor in (('P', r0**2), ('n_plus', 1.0), ('n_minus', 1.0), ('psi', 1.0)):
            values = getattr(state, name).values
            fields[name] = factor * _resample(values, center_coords, center_points, grid.shape)
        return fields

    rescaled = FieldHistory()
    cache: dict[int, dict] = {}

    def sampled(state: State) -> dict:
        if id(state) not in cache:
            cache[id(state)] = sample(state)
        return cache[id(state)]

    for k in range(count):
        s = s_first + k * step
        before, after, weight = _slice_at(history, s * r0**2)
        a = sampled(before)
        b = sampled(after)
        mix = {
            'u': tuple((1 - weight) * ca + weight * cb for ca, cb in zip(a['u'], b['u'])),
            **{
                name: (1 - weight) * a[name] + weight * b[name]
                for name in ('P', 'n_plus', 'n_minus', 'psi')
            },
        }
        rescaled.append(
            State(
                time=s,
                u=VectorField(grid, mix['u']),
                P=ScalarField(grid, mix['P']),
                n_plus=ScalarField(grid, mix['n_plus']),
                n_minus=ScalarField(grid, mix['n_minus']),
                psi=ScalarField(grid, mix['psi']),
            )
        )
    image = tuple(float(c) / r0 for c in x0)
    return RescaledHistory(rescaled, image, float(t0) / r0**2)
