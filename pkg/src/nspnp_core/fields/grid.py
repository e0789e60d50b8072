from typing import Literal, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

BoundaryKind = Literal['periodic', 'wall']

MIN_CELLS = 8


class GridSpec(BaseModel):
    """A uniform box grid with MAC staggering.

    Scalars live at cell centers ``(k + 1/2) h``. The component ``i`` of a
    vector field lives on the faces normal to axis ``i``, at ``k h``. On a
    periodic grid there are ``N_i`` such faces per axis, on a wall grid
    ``N_i + 1`` (both boundary faces included).
    """

    model_config = ConfigDict(frozen=True)

    dims: int = Field(ge=2, le=3)
    """Number of space dimensions (2 or 3)."""

    cells: tuple[int, ...]
    """Number of cells per axis."""

    lengths: tuple[float, ...]
    """Box extent per axis."""

    bc: BoundaryKind = 'periodic'
    """Boundary regime shared by every axis."""

    @model_validator(mode='after')
    def _check_axes(self) -> Self:
        if len(self.cells) != self.dims or len(self.lengths) != self.dims:
            raise ValueError(
                f'Expected {self.dims} cell counts and lengths, received '
                f'{len(self.cells)} and {len(self.lengths)}.'
            )
        if any(n < MIN_CELLS for n in self.cells):
            raise ValueError(f'Every axis needs at least {MIN_CELLS} cells.')
        if any(length <= 0 for length in self.lengths):
            raise ValueError('Axis lengths must be positive.')
        return self

    @classmethod
    def uniform(
        cls, dims: int, n: int, length: float = 1.0, bc: BoundaryKind = 'periodic'
    ) -> 'GridSpec':
        """Build a grid with the same cell count and length on every axis."""
        return cls(dims=dims, cells=(n,) * dims, lengths=(float(length),) * dims, bc=bc)

    @property
    def periodic(self) -> bool:
        return self.bc == 'periodic'

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(self.cells)

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple(length / n for length, n in zip(self.lengths, self.cells))

    @property
    def h_min(self) -> float:
        return min(self.spacing)

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacing))

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    @property
    def size(self) -> int:
        return int(np.prod(self.cells))

    @property
    def center(self) -> np.ndarray:
        return 0.5 * np.asarray(self.lengths)

    def face_count(self, axis: int) -> int:
        n = self.cells[axis]
        return n if self.periodic else n + 1

    def face_shape(self, axis: int) -> tuple[int, ...]:
        shape = list(self.cells)
        shape[axis] = self.face_count(axis)
        return tuple(shape)

    def cell_centers(self, axis: int) -> np.ndarray:
        h = self.spacing[axis]
        return (np.arange(self.cells[axis]) + 0.5) * h

    def face_coords(self, axis: int) -> np.ndarray:
        return np.arange(self.face_count(axis)) * self.spacing[axis]

    def node_coords(self, axis: int) -> np.ndarray:
        """Cell corner coordinates, always ``N + 1`` of them."""
        return np.arange(self.cells[axis] + 1) * self.spacing[axis]

    def mesh(self) -> tuple[np.ndarray, ...]:
        """Cell center coordinates as ``ij``-indexed arrays."""
        return tuple(
            np.meshgrid(*[self.cell_centers(a) for a in range(self.dims)], indexing='ij')
        )

    def face_mesh(self, axis: int) -> tuple[np.ndarray, ...]:
        """Coordinates of the faces carrying component ``axis``."""
        coords = [
            self.face_coords(a) if a == axis else self.cell_centers(a)
            for a in range(self.dims)
        ]
        return tuple(np.meshgrid(*coords, indexing='ij'))

    @property
    def bc_code(self) -> int:
        return 0 if self.periodic else 1

    @classmethod
    def bc_from_code(cls, code: int) -> BoundaryKind:
        if code == 0:
            return 'periodic'
        if code == 1:
            return 'wall'
        raise ValueError(f'Unknown boundary code [{code}].')

    def distance_to_boundary(self, point) -> float:
        """Distance from a point to the box faces.

        Periodic grids are measured on the fundamental box too: balls never
        wrap around the seam.
        """
        point = np.asarray(point, dtype=np.float64)
        lengths = np.asarray(self.lengths)
        return float(np.min(np.minimum(point, lengths - point)))

    def contains(self, point) -> bool:
        point = np.asarray(point, dtype=np.float64)
        return bool(np.all(point >= 0) and np.all(point <= np.asarray(self.lengths)))
