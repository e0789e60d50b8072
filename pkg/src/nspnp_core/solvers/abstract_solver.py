import threading
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from logging import Logger
from typing import Literal, NamedTuple, Optional

import numpy as np
import scipy.sparse as sp

from nspnp_core.exceptions import (
    IncompatibleRhsException,
    NoConvergenceException,
)
from nspnp_core.fields import GridSpec, ScalarField
from nspnp_core.logging import create_null_logger
from nspnp_core.models.parameters import EllipticConfig
from nspnp_core.solvers.operators import (
    AxisKind,
    assemble_laplacian,
    is_singular,
    unknown_shape,
)
from nspnp_core.tracing import tracer

ScalarBoundary = Literal['neumann', 'periodic', 'dirichlet']


@dataclass(frozen=True, eq=False)
class CertifiedField(ScalarField):
    """A solver output carrying its final relative residual."""

    residual: float = 0.0
    iterations: int = 0


class SolveResult(NamedTuple):
    values: np.ndarray
    residual: float
    iterations: int


@dataclass(frozen=True, eq=False)
class AssembledSystem:
    """The matrix of ``-L`` (Poisson) or ``I - alpha L`` (Helmholtz)."""

    matrix: sp.csr_matrix
    shape: tuple[int, ...]
    singular: bool
    cache: dict = field(default_factory=dict)


class EllipticSolver(ABC):
    """Define an elliptic solver.

    Subclasses implement ``_solve`` for an assembled symmetric positive
    (semi)definite system. The public methods validate the input, assemble
    and cache the operators, trace the solve and certify the residual.

    Attributes
    ----------
    _config : EllipticConfig
        Tolerances and iteration limits.

    _logger : Logger
        The logger instance.
    """

    name: str = 'abstract'

    max_unknowns: Optional[int] = None

    _config: EllipticConfig

    _logger: Logger

    def __init__(self, config: EllipticConfig = None, logger: Logger = None):
        self._config = config or EllipticConfig()

        if logger is None:
            logger = create_null_logger(name=f'nspnp.{self.__class__.__name__}')

        self._logger = logger
        self._systems: dict[tuple, AssembledSystem] = {}
        self._systems_lock = threading.Lock()
        self._solve_lock = threading.Lock()

    @property
    def config(self) -> EllipticConfig:
        return self._config

    def poisson(self, rhs: ScalarField, scale: float = 0.0) -> CertifiedField:
        """Solve ``-laplacian(psi) = rhs`` with zero mean.

        Parameters
        ----------
        rhs : ScalarField
            Right hand side; its integral must vanish up to ``compat_tol``.
        scale : float, optional
            Magnitude of the data the right hand side was computed from, per
            unit volume. It keeps rounding noise of a nearly zero right hand
            side from being rejected as incompatible.

        Raises
        ------
        IncompatibleRhsException
            If the mean of the right hand side exceeds the tolerance
        NoConvergenceException
            If the residual stalls above the tolerance
        """
        grid = rhs.grid
        values = rhs.values
        integral = float(np.sum(values) * grid.cell_volume)
        total = float(np.sum(np.abs(values)) * grid.cell_volume)
        bound = self._config.compat_tol * (total + abs(scale) * grid.volume)
        if abs(integral) > bound:
            raise IncompatibleRhsException(
                'The right hand side of a Neumann problem must have zero mean.',
                'elliptic',
                {'integral': integral, 'bound': bound},
            )
        if not np.any(values):
            return CertifiedField(grid, np.zeros(grid.shape))

        kinds = self._scalar_kinds(grid, 'neumann')
        b = values - np.mean(values)
        result = self.solve_system(grid, kinds, None, b)
        x = result.values - np.mean(result.values)
        return CertifiedField(grid, x, result.residual, result.iterations)

    def helmholtz(
        self, rhs: ScalarField, alpha: float, bc: ScalarBoundary = 'neumann'
    ) -> CertifiedField:
        """Solve ``(I - alpha * laplacian) x = rhs``.

        With Neumann or periodic conditions the mean of the solution equals
        the mean of the right hand side exactly.

        Raises
        ------
        ValueError
            If alpha is not positive
        NoConvergenceException
            If the residual stalls above the tolerance
        """
        if not alpha > 0:
            raise ValueError(f'alpha must be positive, received [{alpha}].')
        grid = rhs.grid
        if not np.any(rhs.values):
            return CertifiedField(grid, np.zeros(grid.shape))
        kinds = self._scalar_kinds(grid, bc)
        result = self.solve_system(grid, kinds, alpha, rhs.values)
        x = result.values
        if is_singular(kinds):
            x = x + (np.mean(rhs.values) - np.mean(x))
        return CertifiedField(grid, x, result.residual, result.iterations)

    def helmholtz_component(
        self, component: np.ndarray, axis: int, alpha: float, grid: GridSpec
    ) -> SolveResult:
        """Implicit diffusion of the velocity component normal to ``axis``.

        On wall grids the boundary faces stay zero and the other walls carry
        a no slip condition.
        """
        if not alpha > 0:
            raise ValueError(f'alpha must be positive, received [{alpha}].')
        if not np.any(component):
            return SolveResult(np.zeros_like(component), 0.0, 0)
        if grid.periodic:
            kinds = ('periodic',) * grid.dims
            return self.solve_system(grid, kinds, alpha, component)
        kinds = tuple(
            'dirichlet_node' if a == axis else 'dirichlet_half' for a in range(grid.dims)
        )
        index = [slice(None)] * grid.dims
        index[axis] = slice(1, -1)
        interior = component[tuple(index)]
        result = self.solve_system(grid, kinds, alpha, interior)
        full = np.zeros_like(component)
        full[tuple(index)] = result.values
        return SolveResult(full, result.residual, result.iterations)

    def solve_system(
        self,
        grid: GridSpec,
        kinds: tuple[AxisKind, ...],
        alpha: Optional[float],
        b: np.ndarray,
    ) -> SolveResult:
        """Solve an assembled system, tracing the call and certifying the residual."""
        system = self._system(grid, kinds, alpha)
        problem = 'poisson' if alpha is None else 'helmholtz'

        with tracer.span(
            'elliptic-solve',
            solver=self.name,
            problem=problem,
            unknowns=int(np.prod(system.shape)),
        ) as span:
            try:
                start_time = time.perf_counter()

                with self._solve_lock:
                    x, iterations = self._solve(system, b.reshape(-1).astype(np.float64))

                residual = self._residual(system, x, b.reshape(-1))
                elapsed = time.perf_counter() - start_time

                if residual > self._config.tol:
                    raise NoConvergenceException(
                        f'Residual {residual:.3e} above tolerance {self._config.tol:.1e}.',
                        'elliptic',
                        {'solver': self.name, 'problem': problem, 'iterations': iterations},
                        residual=residual,
                    )

                span.set_attribute('residual', residual)
                span.set_attribute('iterations', iterations)
                tracer.count(
                    'elliptic.solves',
                    description='Elliptic systems solved',
                    unit='solves',
                    method=self.name,
                )
                tracer.histogram(
                    'elliptic.iterations', iterations, method=self.name
                )
                tracer.histogram('elliptic.duration', elapsed, unit='s', method=self.name)

                return SolveResult(x.reshape(system.shape), residual, iterations)

            except Exception as ex:
                tracer.count(
                    'elliptic.failures',
                    description='Elliptic solves that failed',
                    unit='solves',
                    method=self.name,
                )

                if isinstance(ex, (NoConvergenceException, ValueError)):
                    failure = ex
                else:
                    failure = NoConvergenceException(
                        str(ex), 'elliptic', {'solver': self.name, 'problem': problem}
                    )
                self._logger.warning(f'Elliptic solve failed: {failure}')
                tracer.error('Elliptic solve failed', exception=str(failure))
                if failure is ex:
                    raise
                raise failure from ex

    def _system(
        self, grid: GridSpec, kinds: tuple[AxisKind, ...], alpha: Optional[float]
    ) -> AssembledSystem:
        key = (grid, kinds, alpha)
        with self._systems_lock:
            system = self._systems.get(key)
        if system is not None:
            return system

        shape = unknown_shape(grid.cells, kinds)
        size = int(np.prod(shape))
        if self.max_unknowns is not None and size > self.max_unknowns:
            raise ValueError(
                f'Solver [{self.name}] supports at most {self.max_unknowns} unknowns, received {size}.'
            )
        laplacian = assemble_laplacian(grid.cells, grid.spacing, kinds)
        if alpha is None:
            matrix = (-laplacian).tocsr()
            singular = is_singular(kinds)
        else:
            matrix = (sp.identity(size, format='csr') - alpha * laplacian).tocsr()
            singular = False
        system = AssembledSystem(matrix, shape, singular)
        self._logger.debug(
            f'Assembled {size} unknowns for {kinds} (alpha={alpha}) with {self.name}'
        )
        with self._systems_lock:
            self._systems.setdefault(key, system)
            return self._systems[key]

    @staticmethod
    def _residual(system: AssembledSystem, x: np.ndarray, b: np.ndarray) -> float:
        if system.singular:
            b = b - np.mean(b)
        norm_b = float(np.linalg.norm(b))
        if norm_b == 0.0:
            return 0.0
        return float(np.linalg.norm(b - system.matrix @ x) / norm_b)

    @staticmethod
    def _scalar_kinds(grid: GridSpec, bc: ScalarBoundary) -> tuple[AxisKind, ...]:
        if grid.periodic:
            return ('periodic',) * grid.dims
        if bc == 'dirichlet':
            return ('dirichlet_half',) * grid.dims
        return ('neumann',) * grid.dims

    @abstractmethod
    def _solve(self, system: AssembledSystem, b: np.ndarray) -> tuple[np.ndarray, int]:
        """Return the flat solution and the iteration count."""
        pass
