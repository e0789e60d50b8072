from dataclasses import dataclass
from typing import Sequence

import numpy as np

from nspnp_core.fields.grid import GridSpec


def _frozen_copy(values, shape: tuple[int, ...], what: str) -> np.ndarray:
    array = np.array(values, dtype=np.float64)
    if array.size == int(np.prod(shape)) and array.shape != shape:
        array = array.reshape(shape)
    if array.shape != shape:
        raise ValueError(f'{what} expects shape {shape}, received {array.shape}.')
    if not np.all(np.isfinite(array)):
        raise ValueError(f'{what} contains non finite values.')
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Cell centered values on a grid.

    The array is copied on construction and marked read-only. A flat
    row-major array of the right size is accepted and reshaped.
    """

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, 'values', _frozen_copy(self.values, self.grid.shape, 'ScalarField')
        )

    @classmethod
    def zeros(cls, grid: GridSpec) -> 'ScalarField':
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def constant(cls, grid: GridSpec, value: float) -> 'ScalarField':
        return cls(grid, np.full(grid.shape, float(value)))

    @classmethod
    def from_function(cls, grid: GridSpec, func) -> 'ScalarField':
        """Sample ``func(*coords)`` at the cell centers."""
        return cls(grid, np.broadcast_to(func(*grid.mesh()), grid.shape))

    @property
    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    def integral(self) -> float:
        return float(np.sum(self.values) * self.grid.cell_volume)

    def mean(self) -> float:
        return float(np.mean(self.values))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def min(self) -> float:
        return float(np.min(self.values))

    def with_values(self, values: np.ndarray) -> 'ScalarField':
        return ScalarField(self.grid, values)

    def __add__(self, other: 'ScalarField') -> 'ScalarField':
        return ScalarField(self.grid, self.values + _values(other))

    def __sub__(self, other: 'ScalarField') -> 'ScalarField':
        return ScalarField(self.grid, self.values - _values(other))

    def __mul__(self, factor: float) -> 'ScalarField':
        return ScalarField(self.grid, self.values * float(factor))

    __rmul__ = __mul__

    def __neg__(self) -> 'ScalarField':
        return ScalarField(self.grid, -self.values)


def _values(other) -> np.ndarray | float:
    if isinstance(other, ScalarField):
        return other.values
    return other


@dataclass(frozen=True, eq=False)
class VectorField:
    """Face staggered vector field (MAC layout).

    On wall grids the boundary faces of every normal component are set to
    zero on construction, so a VectorField always has zero normal trace.
    """

    grid: GridSpec
    components: tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.components) != self.grid.dims:
            raise ValueError(
                f'VectorField expects {self.grid.dims} components, received {len(self.components)}.'
            )
        frozen = []
        for axis, component in enumerate(self.components):
            array = np.array(component, dtype=np.float64)
            if not self.grid.periodic and array.shape == self.grid.face_shape(axis):
                index = [slice(None)] * self.grid.dims
                for end in (0, -1):
                    index[axis] = end
                    array[tuple(index)] = 0.0
            frozen.append(
                _frozen_copy(array, self.grid.face_shape(axis), f'VectorField[{axis}]')
            )
        object.__setattr__(self, 'components', tuple(frozen))

    @classmethod
    def zeros(cls, grid: GridSpec) -> 'VectorField':
        return cls(grid, tuple(np.zeros(grid.face_shape(a)) for a in range(grid.dims)))

    @classmethod
    def constant(cls, grid: GridSpec, value: Sequence[float]) -> 'VectorField':
        return cls(
            grid,
            tuple(
                np.full(grid.face_shape(a), float(value[a])) for a in range(grid.dims)
            ),
        )

    @classmethod
    def from_function(cls, grid: GridSpec, funcs: Sequence) -> 'VectorField':
        """Sample component ``i`` with ``funcs[i](*coords)`` at its faces."""
        return cls(
            grid,
            tuple(
                np.broadcast_to(funcs[a](*grid.face_mesh(a)), grid.face_shape(a))
                for a in range(grid.dims)
            ),
        )

    def __getitem__(self, axis: int) -> np.ndarray:
        return self.components[axis]

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(c)) for c in self.components))

    def dot(self, other: 'VectorField') -> float:
        """Face inner product ``sum(u_i v_i) * cell volume``.

        On wall grids the boundary faces carry zero and do not contribute.
        """
        return float(
            sum(np.sum(a * b) for a, b in zip(self.components, other.components))
            * self.grid.cell_volume
        )

    def norm_l2(self) -> float:
        return float(np.sqrt(self.dot(self)))

    def map(self, func) -> 'VectorField':
        return VectorField(self.grid, tuple(func(c) for c in self.components))

    def __add__(self, other: 'VectorField') -> 'VectorField':
        return VectorField(
            self.grid, tuple(a + b for a, b in zip(self.components, other.components))
        )

    def __sub__(self, other: 'VectorField') -> 'VectorField':
        return VectorField(
            self.grid, tuple(a - b for a, b in zip(self.components, other.components))
        )

    def __mul__(self, factor: float) -> 'VectorField':
        return VectorField(self.grid, tuple(c * float(factor) for c in self.components))

    __rmul__ = __mul__

    def __neg__(self) -> 'VectorField':
        return VectorField(self.grid, tuple(-c for c in self.components))
