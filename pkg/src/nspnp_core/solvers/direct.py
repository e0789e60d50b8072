import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from nspnp_core.solvers.abstract_solver import AssembledSystem, EllipticSolver


class DirectSolver(EllipticSolver):
    """Sparse LU solve for small grids, used as a test oracle.

    Singular systems are bordered with the constraint ``sum(x) = 0``.
    """

    name = 'direct-small'

    max_unknowns = 4096

    def _solve(self, system: AssembledSystem, b: np.ndarray) -> tuple[np.ndarray, int]:
        matrix = system.matrix
        if not system.singular:
            return np.asarray(spsolve(matrix.tocsc(), b)), 1

        size = matrix.shape[0]
        ones = sp.csr_matrix(np.ones((1, size)))
        bordered = sp.bmat([[matrix, ones.T], [ones, None]], format='csc')
        rhs = np.concatenate([b - np.mean(b), [0.0]])
        solution = np.asarray(spsolve(bordered, rhs))
        return solution[:size], 1
