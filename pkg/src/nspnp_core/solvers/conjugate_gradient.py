import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from nspnp_core.exceptions import NoConvergenceException
from nspnp_core.solvers.abstract_solver import AssembledSystem, EllipticSolver


class ConjugateGradientSolver(EllipticSolver):
    """Conjugate gradient on the assembled operator.

    Singular systems (pure Neumann or periodic Poisson) are solved on the
    zero mean subspace: the operator projects its argument before applying
    the matrix. The iteration is restarted from its last iterate until the
    true residual meets the tolerance or the iteration budget is spent.
    """

    name = 'conjugate-gradient'

    max_restarts = 5

    def _solve(self, system: AssembledSystem, b: np.ndarray) -> tuple[np.ndarray, int]:
        matrix = system.matrix
        if system.singular:
            b = b - np.mean(b)
            operator = LinearOperator(
                matrix.shape,
                matvec=lambda x: matrix @ (x - np.mean(x)),
                dtype=np.float64,
            )
        else:
            operator = matrix

        norm_b = float(np.linalg.norm(b))
        x = np.zeros_like(b)
        iterations = 0
        residual = 1.0

        def count(_):
            nonlocal iterations
            iterations += 1

        for _ in range(self.max_restarts + 1):
            remaining = self._config.max_iter - iterations
            if remaining <= 0:
                break
            x, _info = cg(
                operator,
                b,
                x0=x,
                rtol=0.5 * self._config.tol,
                atol=0.0,
                maxiter=remaining,
                callback=count,
            )
            if system.singular:
                x = x - np.mean(x)
            residual = float(np.linalg.norm(b - matrix @ x) / norm_b)
            if residual <= self._config.tol:
                return x, iterations

        self._logger.warning(
            f'Conjugate gradient stalled at residual {residual:.3e} after {iterations} iterations'
        )
        raise NoConvergenceException(
            f'Conjugate gradient stalled after {iterations} iterations.',
            'elliptic',
            {'residual': residual, 'tol': self._config.tol},
            residual=residual,
        )
