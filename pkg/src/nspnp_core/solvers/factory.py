import logging
import threading
from typing import Callable, Dict, List, Optional, Self

from nspnp_core.logging import create_isolated_logger
from nspnp_core.models.config import NspnpConfig
from nspnp_core.models.parameters import EllipticConfig
from nspnp_core.solvers.abstract_solver import EllipticSolver
from nspnp_core.solvers.conjugate_gradient import ConjugateGradientSolver
from nspnp_core.solvers.direct import DirectSolver
from nspnp_core.tracing import tracer


class SolverFactory:
    """Factory class for managing elliptic solvers.

    Solvers are cached per (method, configuration) so that assembled
    operators are reused across time steps. Custom solvers can be
    registered with ``extend``.

    This is a singleton class - only one instance will ever exist.
    Use SolverFactory.build() to get the instance.

    Example
    -------
    >>> factory = SolverFactory.build()
    >>> solver = factory.solver('conjugate-gradient')
    """

    __instance: Optional['SolverFactory'] = None

    __solvers: Dict[tuple, EllipticSolver] = {}
    """The created solvers"""

    __custom_creators: Dict[str, Callable[[EllipticConfig], EllipticSolver]] = {}
    """The custom solvers"""

    __lock = threading.Lock()

    _config: Optional[NspnpConfig] = None

    _logger: logging.Logger = None

    def __init__(self):
        raise Exception('Use `SolverFactory.build()` to create an instance.')

    @classmethod
    def build(cls) -> 'SolverFactory':
        """Return the factory, creating it on first use.

        Returns
        -------
        SolverFactory
            The singleton instance of the factory.
        """
        with cls.__lock:
            if cls.__instance is None:
                cls.__instance = cls.__new__(cls).initialize(NspnpConfig())
        return cls.__instance

    @classmethod
    def reset(cls):
        cls.__instance = None

    def initialize(self, config: NspnpConfig) -> Self:
        self._config = config

        self._logger = create_isolated_logger(
            name='nspnp',
            level=self._config.logging_level,
            add_console_handler=True,
            add_file_handler=True if self._config.logging_file is not None else False,
            file_path=self._config.logging_file,
        )

        tracer.configure(
            config=self._config,
            logger=self._logger,
            verbose=self._config.logging_level < logging.INFO
            or self._config.tracing.verbose,
        )

        self.__solvers.clear()

        return self

    def solver(
        self, name: Optional[str] = None, config: Optional[EllipticConfig] = None
    ) -> EllipticSolver:
        """Get a solver instance.

        Parameters
        ----------
        name : str, optional
            The registered solver name, the configured default when omitted
        config : EllipticConfig, optional
            Tolerances; ``config.method`` is used when ``name`` is omitted

        Raises
        ------
        ValueError
            If the solver is not registered
        """
        if name is None:
            name = config.method if config is not None else self.default_solver_name()

        config = config or EllipticConfig()
        key = (name, config)

        with self.__lock:
            if key not in self.__solvers:
                self.__solvers[key] = self.__create_solver(name, config)
            return self.__solvers[key]

    def default_solver_name(self) -> str:
        return self._config.default_solver

    def __create_solver(self, name: str, config: EllipticConfig) -> EllipticSolver:
        if name in self.__custom_creators:
            return self.__custom_creators[name](config)

        method_name = f'_create_{name.replace("-", "_")}_solver'

        if hasattr(self, method_name):
            return getattr(self, method_name)(config)

        raise ValueError(f'Solver [{name}] not supported.')

    def _create_conjugate_gradient_solver(
        self, config: EllipticConfig
    ) -> ConjugateGradientSolver:
        return ConjugateGradientSolver(config=config, logger=self._logger)

    def _create_direct_small_solver(self, config: EllipticConfig) -> DirectSolver:
        return DirectSolver(config=config, logger=self._logger)

    def extend(
        self, name: str, callback: Callable[[EllipticConfig], EllipticSolver]
    ) -> 'SolverFactory':
        """Register a custom solver creator.

        Parameters
        ----------
        name : str
            The solver name
        callback : callable
            Receives the EllipticConfig and returns the solver instance

        Raises
        ------
        ValueError
            If name is already registered
        """
        if name in self.__custom_creators:
            raise ValueError(f'Solver [{name}] already registered.')

        self.__custom_creators[name] = callback

        return self

    def get_config(self) -> NspnpConfig:
        return self._config

    def get_logger(self) -> logging.Logger:
        return self._logger

    def get_supported_solvers(self) -> List[str]:
        return ['conjugate-gradient', 'direct-small']

    def get_custom_solvers(self) -> List[str]:
        return list(self.__custom_creators.keys())

    def forget_solvers(self) -> 'SolverFactory':
        """Forget all instantiated and custom solvers."""
        self.__solvers.clear()
        self.__custom_creators.clear()
        return self
