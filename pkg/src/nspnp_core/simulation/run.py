"""Block time marching of the coupled system.

The run is split into ``M`` blocks of length ``epsilon``. In mollified mode
the drift at time ``t`` is the retarded mollification of the velocity,
which reads only slices older than ``t - epsilon``; inside the first block
it is zero and the system splits into the charge equations and a forced
Stokes problem. In direct mode the drift is the current velocity.
"""

from logging import Logger
from typing import Callable, Optional

from nspnp_core.exceptions import StabilityException
from nspnp_core.fields import FieldHistory, State, VectorField
from nspnp_core.logging import log_context, resolve_logger
from nspnp_core.mollifier import theta_hat
from nspnp_core.simulation.config import SimConfig
from nspnp_core.simulation.initial_conditions import initial_state, potential
from nspnp_core.simulation.ledger import EnergyLedger
from nspnp_core.tracing import tracer
from nspnp_core.transport import electro_force, np_step, ns_step

SnapshotSink = Callable[[int, State], None]


def advance(
    state: State,
    w: VectorField,
    config: SimConfig,
    logger: Optional[Logger] = None,
    time: Optional[float] = None,
) -> State:
    """One step of the coupled system with the drift ``w``.

    ``time`` stamps the new state, ``state.time + dt`` by default.
    """
    n_plus, n_minus = np_step(
        state.n_plus, state.n_minus, w, state.psi, config.np_params, config.solver, logger
    )
    force = electro_force(state.n_plus, state.n_minus, state.psi, config.physics.force_form)
    u, pressure = ns_step(state.u, w, force, config.ns_params, config.solver, logger)
    return State(
        time=time if time is not None else state.time + config.time.dt,
        u=u,
        P=pressure,
        n_plus=n_plus,
        n_minus=n_minus,
        psi=potential(n_plus, n_minus, config.solver),
    )


def _check_cfl(w: VectorField, state: State, config: SimConfig):
    speed = max(w.max_abs(), state.u.max_abs())
    cfl = config.time.dt * speed / config.grid.h_min
    if cfl > config.time.max_cfl:
        raise StabilityException(
            f'Advective CFL number {cfl:.3g} exceeds the limit {config.time.max_cfl}.',
            'simulation',
            {'t': state.time, 'cfl': cfl},
        )


def run(
    config: SimConfig,
    logger: Optional[Logger] = None,
    on_snapshot: Optional[SnapshotSink] = None,
    initial: Optional[State] = None,
) -> tuple[FieldHistory, EnergyLedger]:
    """March the coupled system to ``config.time.t_end``.

    Returns the emitted snapshots and the energy ledger. ``on_snapshot`` is
    called with the snapshot index and state every time one is emitted,
    starting with the initial state.

    Raises
    ------
    StabilityException
        If a step blows up or the CFL limit is exceeded; the exception
        carries the last good state and the snapshots emitted so far
    NoConvergenceException
        If an elliptic solve fails
    """
    logger = resolve_logger(logger)
    grid = config.grid
    dt = config.time.dt
    per_block = config.steps_per_block
    every = config.output.snapshot_every
    spec = config.mollifier_spec if config.time.mollified else None

    state = initial if initial is not None else initial_state(
        grid, config.initial, config.seed, config.solver
    )
    emitted = FieldHistory()
    window = FieldHistory(max_length=2 * per_block)
    ledger = EnergyLedger()

    def emit(index: int, snapshot: State):
        emitted.append(snapshot)
        if on_snapshot is not None:
            on_snapshot(index, snapshot)

    ledger.record(state)
    emit(0, state)
    logger.info(
        f'Running {config.steps} steps in {config.time.blocks} blocks '
        f'(dt={dt}, epsilon={config.epsilon}, mollified={config.time.mollified})'
    )

    with tracer.span(
        'simulation-run',
        steps=config.steps,
        blocks=config.time.blocks,
        mollified=config.time.mollified,
        cells=grid.cells,
    ):
        for block in range(config.time.blocks):
            with tracer.span('simulation-block', block=block):
                for local in range(per_block):
                    k = block * per_block + local
                    try:
                        if spec is None:
                            w = state.u
                        else:
                            window.append(state)
                            if block == 0:
                                w = VectorField.zeros(grid)
                            else:
                                w = theta_hat(
                                    window, state.time, spec, dt, 0.0, config.solver, logger
                                )
                        _check_cfl(w, state, config)
                        state = advance(state, w, config, logger, time=(k + 1) * dt)
                    except StabilityException as ex:
                        ex.last_state = state
                        ex.history = emitted
                        logger.error(
                            f'Run stopped: {ex.message}',
                            extra=log_context('simulation', k, state.time),
                        )
                        raise

                    tracer.count('simulation.steps')
                    emitting = (k + 1) % every == 0
                    ledger.record(state, w, emit=emitting)
                    if emitting:
                        emit(len(emitted), state)
            logger.debug(
                f'Block {block} done',
                extra=log_context('simulation', (block + 1) * per_block, state.time),
            )

    logger.info(
        f'Run finished at t={state.time:.6g}, max energy residual {ledger.max_residual:.3e}'
    )
    return emitted, ledger
