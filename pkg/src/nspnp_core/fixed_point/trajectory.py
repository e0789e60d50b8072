from dataclasses import dataclass
from typing import Optional

import numpy as np

from nspnp_core.fields import GridSpec, ScalarField


def _stack(values, grid: GridSpec, what: str) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    if array.ndim != grid.dims + 1 or array.shape[1:] != grid.shape:
        raise ValueError(
            f'{what} expects shape (slices, {", ".join(map(str, grid.shape))}), '
            f'received {array.shape}.'
        )
    if not np.all(np.isfinite(array)):
        raise ValueError(f'{what} contains non finite values.')
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class YTState:
    """A pair of charge trajectories on the uniform time grid ``k * dt``.

    Slice ``k`` of ``n_plus`` and ``n_minus`` is the density at time
    ``k * dt``; both arrays share the grid and the time axis.
    """

    grid: GridSpec
    dt: float
    n_plus: np.ndarray
    n_minus: np.ndarray

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f'dt must be positive, received [{self.dt}].')
        plus = _stack(self.n_plus, self.grid, 'YTState.n_plus')
        minus = _stack(self.n_minus, self.grid, 'YTState.n_minus')
        if plus.shape != minus.shape:
            raise ValueError('Both species must share the time axis.')
        object.__setattr__(self, 'n_plus', plus)
        object.__setattr__(self, 'n_minus', minus)

    @classmethod
    def constant_in_time(
        cls, n_plus: ScalarField, n_minus: ScalarField, dt: float, steps: int
    ) -> 'YTState':
        """The trajectory that stays at the given densities."""
        count = steps + 1
        return cls(
            n_plus.grid,
            dt,
            np.broadcast_to(n_plus.values, (count, *n_plus.grid.shape)),
            np.broadcast_to(n_minus.values, (count, *n_minus.grid.shape)),
        )

    @classmethod
    def zeros(cls, grid: GridSpec, dt: float, steps: int) -> 'YTState':
        empty = np.zeros((steps + 1, *grid.shape))
        return cls(grid, dt, empty, empty)

    @classmethod
    def random(
        cls,
        grid: GridSpec,
        dt: float,
        steps: int,
        amplitude: float = 1.0,
        rng: Optional[np.random.Generator] = None,
    ) -> 'YTState':
        """Bounded nonnegative trajectory with equal masses in every slice."""
        rng = rng if rng is not None else np.random.default_rng()
        shape = (steps + 1, *grid.shape)
        plus = amplitude * rng.random(shape)
        minus = amplitude * rng.random(shape)
        axes = tuple(range(1, grid.dims + 1))
        ratio = plus.sum(axis=axes, keepdims=True) / minus.sum(axis=axes, keepdims=True)
        return cls(grid, dt, plus, minus * ratio)

    @property
    def steps(self) -> int:
        return self.n_plus.shape[0] - 1

    @property
    def horizon(self) -> float:
        return self.steps * self.dt

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.steps + 1) * self.dt

    def slice(self, k: int) -> tuple[ScalarField, ScalarField]:
        return (
            ScalarField(self.grid, self.n_plus[k]),
            ScalarField(self.grid, self.n_minus[k]),
        )

    def truncate(self, steps: int) -> 'YTState':
        """The first ``steps`` steps of the trajectory."""
        if steps < 0 or steps > self.steps:
            raise ValueError(
                f'Cannot truncate a trajectory of {self.steps} steps to {steps}.'
            )
        return YTState(
            self.grid, self.dt, self.n_plus[: steps + 1], self.n_minus[: steps + 1]
        )

    def _check_compatible(self, other: 'YTState'):
        if other.grid != self.grid or other.n_plus.shape != self.n_plus.shape:
            raise ValueError('Trajectories live on different grids or time axes.')
        if abs(other.dt - self.dt) > 1e-12 * self.dt:
            raise ValueError('Trajectories use different time steps.')

    def __add__(self, other: 'YTState') -> 'YTState':
        self._check_compatible(other)
        return YTState(
            self.grid, self.dt, self.n_plus + other.n_plus, self.n_minus + other.n_minus
        )

    def __sub__(self, other: 'YTState') -> 'YTState':
        self._check_compatible(other)
        return YTState(
            self.grid, self.dt, self.n_plus - other.n_plus, self.n_minus - other.n_minus
        )

    def __mul__(self, factor: float) -> 'YTState':
        return YTState(
            self.grid, self.dt, self.n_plus * float(factor), self.n_minus * float(factor)
        )

    __rmul__ = __mul__


def yt_norm(y: YTState) -> float:
    """``(int_0^T (||n+(t)||_2^2 + ||n-(t)||_2^2)^2 dt)^(1/4)`` by the trapezoid rule."""
    if y.steps == 0:
        return 0.0
    axes = tuple(range(1, y.grid.dims + 1))
    energy = (
        np.sum(y.n_plus**2, axis=axes) + np.sum(y.n_minus**2, axis=axes)
    ) * y.grid.cell_volume
    integrand = energy**2
    integral = y.dt * (np.sum(integrand) - 0.5 * (integrand[0] + integrand[-1]))
    return float(integral**0.25)
