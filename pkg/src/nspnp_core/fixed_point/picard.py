"""The contraction map on charge trajectories and its Picard iteration.

``map_F`` freezes the potential of a given trajectory ``ybar``, slice by
slice, and solves the linear charge transport from the fixed initial data.
A fixed point of ``F`` is a self-consistent solution of the charge
equations for the prescribed drift.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from logging import Logger
from typing import NamedTuple, Optional, Sequence

import numpy as np

from nspnp_core.exceptions import DegeneratePairException, MaxItersExceededException
from nspnp_core.fields import GridSpec, ScalarField, VectorField
from nspnp_core.fixed_point.trajectory import YTState, yt_norm
from nspnp_core.logging import log_context, resolve_logger
from nspnp_core.models.parameters import EllipticConfig, NPStepParams, PicardConfig
from nspnp_core.solvers import solve_neumann_poisson
from nspnp_core.tracing import tracer
from nspnp_core.transport import np_step

DEGENERATE_DENOMINATOR = 1e-14


@dataclass(frozen=True, eq=False)
class PicardProblem:
    """Initial charges, drift and discretisation shared by every evaluation of F.

    ``drift`` holds one velocity per step (the drift used to advance slice
    ``k``); ``None`` stands for a fluid at rest.
    """

    n0_plus: ScalarField
    n0_minus: ScalarField
    dt: float
    steps: int
    drift: Optional[Sequence[VectorField]] = None
    clip_in_flux: bool = True
    elliptic: EllipticConfig = field(default_factory=EllipticConfig)

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f'dt must be positive, received [{self.dt}].')
        if self.steps < 1:
            raise ValueError(f'At least one step is required, received [{self.steps}].')
        if self.drift is not None and len(self.drift) < self.steps:
            raise ValueError(
                f'The drift covers {len(self.drift)} steps, {self.steps} are required.'
            )

    @property
    def grid(self) -> GridSpec:
        return self.n0_plus.grid

    @property
    def horizon(self) -> float:
        return self.steps * self.dt

    @property
    def np_params(self) -> NPStepParams:
        return NPStepParams(dt=self.dt, clip_in_flux=self.clip_in_flux)

    def drift_at(self, k: int) -> VectorField:
        if self.drift is None:
            return VectorField.zeros(self.grid)
        return self.drift[k]

    def with_steps(self, steps: int) -> 'PicardProblem':
        """The same problem on the shorter horizon ``steps * dt``."""
        return PicardProblem(
            self.n0_plus,
            self.n0_minus,
            self.dt,
            steps,
            self.drift,
            self.clip_in_flux,
            self.elliptic,
        )

    def initial_trajectory(self) -> YTState:
        """The initial charges held constant over the horizon."""
        return YTState.constant_in_time(self.n0_plus, self.n0_minus, self.dt, self.steps)


class PicardRecord(NamedTuple):
    iter: int
    ratio: float
    """Increment over the previous increment, NaN on the first iteration."""

    yt_increment: float
    T: float


class HorizonTrial(NamedTuple):
    steps: int
    T: float
    ratio: float


class ContractionHorizon(NamedTuple):
    steps: int
    """Largest tested step count with a ratio at or below the target."""

    T: float
    ratio: float
    trials: list[HorizonTrial]


def frozen_potential(n_plus: np.ndarray, n_minus: np.ndarray, grid: GridSpec, config):
    rho = ScalarField(grid, n_plus - n_minus)
    return ScalarField(grid, solve_neumann_poisson(rho, config=config).values)


def map_F(ybar: YTState, problem: PicardProblem, logger: Optional[Logger] = None) -> YTState:
    """Evaluate the contraction map on ``ybar``.

    For every step the potential solves ``-laplacian(psi) = n+bar - n-bar`` on
    the slice of ``ybar`` at the current time, then both species advance
    with that frozen potential and the prescribed drift.

    Raises
    ------
    IncompatibleRhsException
        If a slice of ``ybar`` is not charge neutral
    """
    grid = problem.grid
    if ybar.grid != grid or ybar.steps < problem.steps:
        raise ValueError(
            f'ybar covers {ybar.steps} steps on {ybar.grid.cells}, the problem '
            f'needs {problem.steps} on {grid.cells}.'
        )
    params = problem.np_params
    plus = [problem.n0_plus.values]
    minus = [problem.n0_minus.values]
    n_plus, n_minus = problem.n0_plus, problem.n0_minus
    for k in range(problem.steps):
        psi = frozen_potential(ybar.n_plus[k], ybar.n_minus[k], grid, problem.elliptic)
        n_plus, n_minus = np_step(
            n_plus, n_minus, problem.drift_at(k), psi, params, problem.elliptic, logger
        )
        plus.append(n_plus.values)
        minus.append(n_minus.values)
    return YTState(grid, problem.dt, np.stack(plus), np.stack(minus))


def contraction_ratio(
    y1: YTState,
    y2: YTState,
    problem: PicardProblem,
    logger: Optional[Logger] = None,
) -> float:
    """``yt_norm(F(y1) - F(y2)) / yt_norm(y1 - y2)``.

    The two evaluations of F run concurrently.

    Raises
    ------
    DegeneratePairException
        If the two trajectories coincide in the trajectory norm
    """
    y1 = y1.truncate(problem.steps)
    y2 = y2.truncate(problem.steps)
    denominator = yt_norm(y1 - y2)
    if denominator < DEGENERATE_DENOMINATOR:
        raise DegeneratePairException(
            'The trajectories coincide, the ratio is undefined.',
            'fixed_point',
            {'distance': denominator},
        )
    with ThreadPoolExecutor(max_workers=2) as executor:
        f1, f2 = executor.map(lambda y: map_F(y, problem, logger), (y1, y2))
    return yt_norm(f1 - f2) / denominator


def picard_solve(
    y0: YTState,
    problem: PicardProblem,
    config: Optional[PicardConfig] = None,
    logger: Optional[Logger] = None,
) -> tuple[YTState, list[PicardRecord]]:
    """Iterate ``y <- F(y)`` until the relative increment drops below ``config.tol``.

    When an increment fails to shrink the horizon is multiplied by
    ``config.t_shrink`` and the iteration restarts from ``y0`` on the shorter
    horizon. The returned trajectory covers the horizon that converged.

    Raises
    ------
    MaxItersExceededException
        When the iteration budget or the allowed restarts are exhausted; the
        exception carries the ratio history
    """
    config = config or PicardConfig()
    logger = resolve_logger(logger)
    records: list[PicardRecord] = []
    iterations = 0
    restarts = 0

    with tracer.span('picard-solve', steps=problem.steps, dt=problem.dt) as span:
        while True:
            start = y0.truncate(min(problem.steps, y0.steps))
            if start.steps < problem.steps:
                raise ValueError(
                    f'The initial guess covers {y0.steps} steps, {problem.steps} are required.'
                )
            y = start
            previous = None
            stalled = False
            while iterations < config.max_iters:
                y_next = map_F(y, problem, logger)
                iterations += 1
                tracer.count('picard.iterations')
                increment = yt_norm(y_next - y)
                reference = yt_norm(y_next)
                ratio = increment / previous if previous else math.nan
                records.append(PicardRecord(iterations, ratio, increment, problem.horizon))
                logger.debug(
                    f'Increment {increment:.3e}, ratio {ratio:.3g}',
                    extra=log_context('picard', iterations, problem.horizon),
                )
                y = y_next
                if increment <= config.tol * reference:
                    span.set_attribute('iterations', iterations)
                    span.set_attribute('horizon', problem.horizon)
                    return y, records
                if previous is not None and ratio >= 1.0:
                    stalled = True
                    break
                previous = increment

            if not stalled:
                raise MaxItersExceededException(
                    f'No fixed point within {config.max_iters} iterations.',
                    'fixed_point',
                    {'iterations': iterations, 'T': problem.horizon},
                    records=records,
                )
            shorter = int(math.floor(problem.steps * config.t_shrink))
            if restarts >= config.max_restarts or shorter < 1:
                raise MaxItersExceededException(
                    'The iteration does not contract on any allowed horizon.',
                    'fixed_point',
                    {'restarts': restarts, 'T': problem.horizon},
                    records=records,
                )
            restarts += 1
            logger.warning(
                f'Picard stalled at T={problem.horizon:.4g} (ratio {ratio:.3g}), '
                f'restarting with {shorter} steps'
            )
            tracer.warn('picard-restart', T=problem.horizon, ratio=ratio)
            problem = problem.with_steps(shorter)


def find_contraction_horizon(
    y1: YTState,
    y2: YTState,
    problem: PicardProblem,
    target: float = 0.5,
    logger: Optional[Logger] = None,
) -> ContractionHorizon:
    """Largest horizon whose measured contraction ratio is at most ``target``.

    The step count is halved until the ratio drops below the target, then
    bisected between the last failing and the first passing count.

    Raises
    ------
    MaxItersExceededException
        If even a single step does not contract enough
    """
    logger = resolve_logger(logger)
    trials: list[HorizonTrial] = []

    def measure(steps: int) -> float:
        ratio = contraction_ratio(y1, y2, problem.with_steps(steps), logger)
        trials.append(HorizonTrial(steps, steps * problem.dt, ratio))
        logger.info(f'Contraction ratio {ratio:.4f} at {steps} steps')
        return ratio

    failing = None
    steps = problem.steps
    ratio = measure(steps)
    while ratio > target:
        if steps == 1:
            raise MaxItersExceededException(
                f'The contraction ratio stays above {target} down to a single step.',
                'fixed_point',
                {'ratio': ratio, 'dt': problem.dt},
            )
        failing = steps
        steps = max(1, steps // 2)
        ratio = measure(steps)

    passing, passing_ratio = steps, ratio
    while failing is not None and failing - passing > 1:
        middle = (passing + failing) // 2
        middle_ratio = measure(middle)
        if middle_ratio <= target:
            passing, passing_ratio = middle, middle_ratio
        else:
            failing = middle

    return ContractionHorizon(passing, passing * problem.dt, passing_ratio, trials)


def fixed_point_gap(
    starts: Sequence[YTState],
    problem: PicardProblem,
    config: Optional[PicardConfig] = None,
    logger: Optional[Logger] = None,
) -> float:
    """Largest distance between the fixed points reached from several starts.

    Every solve is truncated to the shortest horizon any of them converged on.
    """
    solutions = [picard_solve(start, problem, config, logger)[0] for start in starts]
    steps = min(s.steps for s in solutions)
    solutions = [s.truncate(steps) for s in solutions]
    return max(
        (yt_norm(a - b) for i, a in enumerate(solutions) for b in solutions[i + 1 :]),
        default=0.0,
    )
