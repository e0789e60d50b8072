"""Facade for running the coupled solver and analysing its output."""

import logging
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from nspnp_core.exceptions import (
    CoverageException,
    MaxItersExceededException,
    StabilityException,
)
from nspnp_core.fields import FieldHistory, State
from nspnp_core.fixed_point import (
    ContractionHorizon,
    PicardProblem,
    PicardRecord,
    YTState,
    find_contraction_horizon,
    picard_solve,
)
from nspnp_core.models.config import NspnpConfig
from nspnp_core.models.parameters import EllipticConfig, RegularityConfig
from nspnp_core.models.reports import HorizonSummary, HorizonTrialSummary, PicardReport
from nspnp_core.regularity import (
    AnalysisReport,
    LocalEnergyBalance,
    LocalEnergyProbe,
    ScanResult,
    VitaliBound,
    local_energy_balance,
    scan,
    vitali_bound,
)
from nspnp_core.services import ReportService, SnapshotService
from nspnp_core.services.report_service import MANIFEST_NAME
from nspnp_core.simulation import EnergyLedger, SimConfig, initial_state, load_sim_config
from nspnp_core.simulation import run as run_simulation
from nspnp_core.solvers import EllipticSolver, SolverFactory

LEDGER_NAME = 'ledger.csv'
CHECKPOINT_NAME = 'checkpoint.nspnp'
ANALYSIS_JSON = 'analysis.json'
ANALYSIS_CSV = 'analysis.csv'
PICARD_CSV = 'picard.csv'
PICARD_JSON = 'picard.json'

ANALYSIS_COLUMNS = ('t0', 'x0', 'x1', 'x2', 'radius', 'A', 'B', 'C', 'D', 'l3', 'grad', 'flagged')


class RunResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    history: FieldHistory
    ledger: EnergyLedger
    directory: Path
    outputs: list[Path] = []


class AnalysisResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    scan: ScanResult
    vitali: VitaliBound
    probe: Optional[LocalEnergyBalance] = None
    outputs: list[Path] = []

    @property
    def flagged(self) -> int:
        return len(self.scan.flagged)


class PicardResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    records: list[PicardRecord]
    solution: YTState
    horizon: ContractionHorizon
    outputs: list[Path] = []


class Nspnp:
    """Static facade for the coupled solver, the fixed point study and the regularity scans.

    It keeps the process wide SolverFactory, and through it the configured
    logger and tracer, and writes every artifact of a command to an output
    directory.

    Example
    -------
    Run a configuration and scan the snapshots:
    >>> result = Nspnp.run(Nspnp.load('run.toml'), 'output')
    >>> analysis = Nspnp.analyze('output')

    """

    CONJUGATE_GRADIENT = 'conjugate-gradient'
    DIRECT_SMALL = 'direct-small'

    _factory: Optional[SolverFactory] = None

    def __new__(cls):
        """Prevent instantiation of this static class."""
        raise TypeError(f'{cls.__name__} is a static class and cannot be instantiated')

    @classmethod
    def _get_factory(cls) -> SolverFactory:
        if cls._factory is None:
            cls._factory = SolverFactory.build()
        return cls._factory

    @classmethod
    def config(cls) -> NspnpConfig:
        return cls._get_factory().get_config()

    @classmethod
    def logger(cls) -> logging.Logger:
        return cls._get_factory().get_logger()

    @classmethod
    def solver(
        cls, name: Optional[str] = None, config: Optional[EllipticConfig] = None
    ) -> EllipticSolver:
        return cls._get_factory().solver(name, config)

    @classmethod
    def solvers(cls) -> list[str]:
        return cls._get_factory().get_supported_solvers() + cls._get_factory().get_custom_solvers()

    @classmethod
    def extend(cls, name: str, callback: Callable[[EllipticConfig], EllipticSolver]) -> SolverFactory:
        """Register a custom elliptic solver, available through ``Nspnp.solver(name)``."""
        return cls._get_factory().extend(name=name, callback=callback)

    @staticmethod
    def load(path: str | Path, seed: Optional[int] = None) -> SimConfig:
        """Read and validate a run configuration, optionally overriding the seed.

        Raises
        ------
        ConfigValidationException
            If the file is missing or does not validate
        """
        config = load_sim_config(path)
        if seed is not None:
            config = SimConfig.model_validate({**config.model_dump(), 'seed': seed})
        return config

    @classmethod
    def run(
        cls,
        config: SimConfig,
        out: Optional[str | Path] = None,
        on_snapshot: Optional[Callable[[int, State], None]] = None,
    ) -> RunResult:
        """Run the coupled system, streaming snapshots to ``out``.

        ``on_snapshot`` is called after each emitted state is written.

        Writes the snapshots, ``ledger.csv`` and ``manifest.json``. When the
        run becomes unstable the last good state is written to
        ``checkpoint.nspnp`` before the exception propagates.

        Raises
        ------
        StabilityException
            If the run blows up
        NoConvergenceException
            If an elliptic solve fails
        """
        logger = cls.logger()
        directory = Path(out) if out is not None else config.output.directory
        write = config.output.write
        outputs: list[Path] = []
        if write:
            directory.mkdir(parents=True, exist_ok=True)

        def emit(index: int, state: State):
            if write:
                outputs.append(
                    SnapshotService.write(state, directory / SnapshotService.snapshot_name(index))
                )
            if on_snapshot is not None:
                on_snapshot(index, state)

        try:
            history, ledger = run_simulation(config, logger, on_snapshot=emit)
        except StabilityException as ex:
            if write and ex.last_state is not None:
                path = SnapshotService.write(ex.last_state, directory / CHECKPOINT_NAME)
                logger.warning(f'Last good state at t={ex.last_state.time:.6g} saved to {path}')
            raise

        if write:
            outputs.append(ReportService.write_ledger(ledger.rows, directory / LEDGER_NAME))
            manifest = ReportService.write_manifest(
                directory,
                config.fingerprint(),
                outputs,
                seed=config.seed,
                snapshots=len(history),
                ledger=ledger.summary(),
            )
            logger.info(f'Wrote {len(history)} snapshots and the ledger to {directory}')
            outputs.append(manifest)
        return RunResult(history=history, ledger=ledger, directory=directory, outputs=outputs)

    @staticmethod
    def _probe(history: FieldHistory, config: RegularityConfig) -> Optional[LocalEnergyBalance]:
        """Local energy balance on the largest bump centered in the box."""
        if len(history) < 3:
            return None
        grid = history.grid
        center = tuple(float(c) for c in grid.center)
        radius = min(max(config.radii), 0.9 * grid.distance_to_boundary(center))
        half = 0.5 * (history.t_last - history.t_first)
        probe = LocalEnergyProbe(center, history.t_first + half, radius, half)
        try:
            return local_energy_balance(history, probe)
        except CoverageException:
            return None

    @staticmethod
    def _analysis_rows(result: ScanResult):
        for record in result.records:
            report = record.report
            x = list(record.cylinder.x0) + [float('nan')] * (3 - len(record.cylinder.x0))
            yield (
                record.cylinder.t0,
                *x,
                record.cylinder.radius,
                report.A,
                report.B,
                report.C,
                report.D,
                report.l3_criterion_value,
                record.grad_value,
                int(record.flagged),
            )

    @classmethod
    def analyze(
        cls,
        snapshots: str | Path,
        config: Optional[RegularityConfig] = None,
        out: Optional[str | Path] = None,
    ) -> AnalysisResult:
        """Scan a snapshot directory and write ``analysis.json`` and ``analysis.csv``.

        The reports are written next to the snapshots unless ``out`` is given.

        Raises
        ------
        SnapshotFormatException
            If the directory holds no valid snapshots
        ValueError
            If fewer than two radii resolve four cells
        """
        logger = cls.logger()
        config = config or RegularityConfig()
        history = SnapshotService.restore(snapshots)
        logger.info(f'Restored {len(history)} snapshots from {snapshots}')

        result = scan(history, config, logger)
        cover = vitali_bound(history, [r.cylinder for r in result.flagged], config.epsilon1)
        probe = cls._probe(history, config)

        directory = Path(out) if out is not None else Path(snapshots)
        report = AnalysisReport.build(result, cover, probe, config)
        outputs = [
            ReportService.write_json(report, directory / ANALYSIS_JSON),
            ReportService.write_csv(
                cls._analysis_rows(result), ANALYSIS_COLUMNS, directory / ANALYSIS_CSV
            ),
        ]
        return AnalysisResult(scan=result, vitali=cover, probe=probe, outputs=outputs)

    @classmethod
    def picard(cls, config: SimConfig, out: Optional[str | Path] = None) -> PicardResult:
        """Solve the charge fixed point for the initial data of a run configuration.

        The drift is the initial velocity held constant in time. Writes the
        ratio history to ``picard.csv`` and the contraction horizon to
        ``picard.json``; on failure the ratio history is written before the
        exception propagates.

        Raises
        ------
        MaxItersExceededException
            If no horizon allowed by the configuration contracts
        """
        logger = cls.logger()
        directory = Path(out) if out is not None else config.output.directory
        directory.mkdir(parents=True, exist_ok=True)

        state = initial_state(config.grid, config.initial, config.seed, config.solver)
        problem = PicardProblem(
            n0_plus=state.n_plus,
            n0_minus=state.n_minus,
            dt=config.time.dt,
            steps=config.steps,
            drift=[state.u] * config.steps,
            clip_in_flux=config.physics.clip_in_flux,
            elliptic=config.solver,
        )
        ratio_path = directory / PICARD_CSV
        try:
            solution, records = picard_solve(
                problem.initial_trajectory(), problem, config.picard, logger
            )
        except MaxItersExceededException as ex:
            ReportService.write_ratio_history(ex.records, ratio_path)
            raise
        outputs = [ReportService.write_ratio_history(records, ratio_path)]

        solved = problem.with_steps(solution.steps)
        amplitude = max(state.n_plus.max_abs(), state.n_minus.max_abs(), 1.0)
        perturbed = YTState.random(
            solved.grid,
            solved.dt,
            solved.steps,
            amplitude,
            np.random.default_rng(config.seed),
        )
        horizon = find_contraction_horizon(
            solved.initial_trajectory(), perturbed, solved, config.picard.ratio_target, logger
        )
        outputs.append(
            ReportService.write_json(
                PicardReport(
                    iterations=len(records),
                    converged_T=solution.horizon,
                    final_ratio=records[-1].ratio if records else None,
                    horizon=HorizonSummary(
                        steps=horizon.steps,
                        T=horizon.T,
                        ratio=horizon.ratio,
                        target=config.picard.ratio_target,
                    ),
                    trials=[HorizonTrialSummary(**t._asdict()) for t in horizon.trials],
                ),
                directory / PICARD_JSON,
            )
        )
        logger.info(
            f'Fixed point after {len(records)} iterations on T={solution.horizon:.4g}, '
            f'contraction horizon T*={horizon.T:.4g}'
        )
        return PicardResult(records=records, solution=solution, horizon=horizon, outputs=outputs)

    @staticmethod
    def report(directory: str | Path) -> dict:
        """Collect the summaries found in an output directory.

        Returns a mapping with the optional keys ``manifest``, ``ledger``,
        ``analysis`` and ``picard``.
        """
        directory = Path(directory)
        found = {}
        if (directory / MANIFEST_NAME).exists():
            found['manifest'] = ReportService.read_json(directory / MANIFEST_NAME)
        if (directory / LEDGER_NAME).exists():
            found['ledger'] = ReportService.read_csv(directory / LEDGER_NAME)
        if (directory / ANALYSIS_JSON).exists():
            found['analysis'] = ReportService.read_json(directory / ANALYSIS_JSON)['summary']
        if (directory / PICARD_JSON).exists():
            found['picard'] = ReportService.read_json(directory / PICARD_JSON)
        return found
