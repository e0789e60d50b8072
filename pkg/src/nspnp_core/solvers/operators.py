"""Sparse matrices of the discrete Laplacian.

The matrices reproduce ``laplacian`` (cell centered, Neumann or periodic)
and ``face_laplacian`` (velocity components) entry by entry, so a Poisson
solve followed by a gradient leaves a divergence equal to the solver
residual.
"""

from typing import Literal

import numpy as np
import scipy.sparse as sp

AxisKind = Literal['periodic', 'neumann', 'dirichlet_half', 'dirichlet_node']


def unknowns_along(n: int, kind: AxisKind) -> int:
    return n - 1 if kind == 'dirichlet_node' else n


def second_difference(n: int, h: float, kind: AxisKind) -> sp.csr_matrix:
    """One dimensional second difference on ``n`` cells.

    ``neumann`` and ``dirichlet_half`` act on cell centers with a mirrored
    (resp. sign flipped) ghost cell; ``dirichlet_node`` acts on the ``n - 1``
    interior nodes with zero values on both ends.
    """
    m = unknowns_along(n, kind)
    main = np.full(m, -2.0)
    off = np.ones(m - 1)
    if kind == 'neumann':
        main[0] = main[-1] = -1.0
    elif kind == 'dirichlet_half':
        main[0] = main[-1] = -3.0
    matrix = sp.diags([off, main, off], [-1, 0, 1], shape=(m, m), format='lil')
    if kind == 'periodic':
        matrix[0, m - 1] += 1.0
        matrix[m - 1, 0] += 1.0
    return (matrix.tocsr() / h**2).tocsr()


def assemble_laplacian(
    cells: tuple[int, ...], spacing: tuple[float, ...], kinds: tuple[AxisKind, ...]
) -> sp.csr_matrix:
    """Kronecker sum of the axis second differences, row-major ordering."""
    sizes = [unknowns_along(n, k) for n, k in zip(cells, kinds)]
    total = None
    for axis, (n, h, kind) in enumerate(zip(cells, spacing, kinds)):
        term = None
        for other, size in enumerate(sizes):
            factor = second_difference(n, h, kind) if other == axis else sp.identity(size)
            term = factor if term is None else sp.kron(term, factor)
        total = term if total is None else total + term
    return sp.csr_matrix(total)


def unknown_shape(cells: tuple[int, ...], kinds: tuple[AxisKind, ...]) -> tuple[int, ...]:
    return tuple(unknowns_along(n, k) for n, k in zip(cells, kinds))


def is_singular(kinds: tuple[AxisKind, ...]) -> bool:
    """Constants are in the kernel when no axis carries a Dirichlet condition."""
    return all(k in ('periodic', 'neumann') for k in kinds)
