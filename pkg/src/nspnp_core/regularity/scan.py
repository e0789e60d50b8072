"""Lattice scans of the gradient criterion."""

from concurrent.futures import ThreadPoolExecutor
from logging import Logger
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer

from nspnp_core.exceptions import CoverageException, NspnpException
from nspnp_core.fields import FieldHistory, ParabolicCylinder
from nspnp_core.logging import resolve_logger
from nspnp_core.models.parameters import RegularityConfig
from nspnp_core.models.reports import JsonFloat
from nspnp_core.regularity.criteria import resolvable_radii
from nspnp_core.regularity.quantities import CKNReport, ckn
from nspnp_core.tracing import tracer


class ScanRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    cylinder: ParabolicCylinder
    """The cylinder at the smallest scanned radius."""

    report: CKNReport = Field(exclude=True)
    """Report at the smallest scanned radius."""

    flagged: bool
    grad_value: JsonFloat
    """The larger B of the two smallest radii."""

    reports: tuple[CKNReport, ...] = ()
    """Reports for every scanned radius, smallest first."""


class ScanResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    records: list[ScanRecord] = Field(default_factory=list)
    skipped: int = 0
    """Centers whose largest cylinder leaves the domain or the history."""

    errors: list[NspnpException] = Field(default_factory=list)

    @field_serializer('errors')
    def _errors(self, errors: list[NspnpException]) -> list[str]:
        return [str(e) for e in errors]

    @property
    def flagged(self) -> list[ScanRecord]:
        return [r for r in self.records if r.flagged]

    def summary(self) -> dict:
        return {
            'centers': len(self.records),
            'flagged': len(self.flagged),
            'skipped': self.skipped,
            'errors': [str(e) for e in self.errors],
        }


def lattice_centers(history: FieldHistory, config: RegularityConfig) -> list[tuple[tuple, float]]:
    """Space-time centers visited by a scan, ordered by time then position."""
    grid = history.grid
    axes = []
    for a in range(grid.dims):
        centers = grid.cell_centers(a)
        offset = config.stride_space // 2
        axes.append(centers[offset :: config.stride_space])
    mesh = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, grid.dims)
    points = [tuple(float(c) for c in p) for p in mesh]
    if config.times is not None:
        times = [float(t) for t in config.times]
    else:
        times = [float(t) for t in history.times[:: config.stride_time]]
    return [(p, t) for t in sorted(times) for p in sorted(points)]


def _scan_center(
    history: FieldHistory, x0: tuple, t0: float, radii: list[float], config: RegularityConfig
) -> Optional[ScanRecord]:
    largest = ParabolicCylinder(x0, t0, radii[-1])
    if not largest.is_interior(history.grid) or not history.covers(largest.t_start, t0):
        return None
    reports = tuple(ckn(history, ParabolicCylinder(x0, t0, r), config) for r in radii)
    grad_value = max(r.B for r in reports[:2])
    return ScanRecord(
        cylinder=reports[0].cylinder,
        report=reports[0],
        flagged=not grad_value < config.epsilon1**2,
        grad_value=grad_value,
        reports=reports,
    )


def scan(
    history: FieldHistory,
    config: Optional[RegularityConfig] = None,
    logger: Optional[Logger] = None,
) -> ScanResult:
    """Evaluate the gradient criterion on a lattice of cylinder centers.

    Centers run concurrently on ``config.workers`` threads; records are
    sorted by time and position, independent of scheduling. Centers whose
    largest cylinder is not interior are skipped and counted; coverage
    errors are collected per center.

    Raises
    ------
    ValueError
        If fewer than two radii are resolvable on the grid
    """
    config = config or RegularityConfig()
    logger = resolve_logger(logger)
    result = ScanResult()
    if len(history) == 0:
        result.errors.append(CoverageException('The history is empty.', 'scan'))
        logger.warning('Scan on an empty history, no cylinders evaluated')
        return result

    radii = resolvable_radii(history.grid, config.radii)
    if len(radii) < 2:
        raise ValueError(
            f'At least two radii spanning four cells are required, received {list(config.radii)}.'
        )
    centers = lattice_centers(history, config)

    def evaluate(center):
        x0, t0 = center
        try:
            return center, _scan_center(history, x0, t0, radii, config), None
        except CoverageException as ex:
            return center, None, ex

    with tracer.span('regularity-scan', centers=len(centers), radii=radii) as span:
        with ThreadPoolExecutor(max_workers=config.workers) as executor:
            outcomes = list(executor.map(evaluate, centers))

        for center, record, error in outcomes:
            if error is not None:
                result.errors.append(error)
            elif record is None:
                result.skipped += 1
            else:
                result.records.append(record)
                tracer.count('regularity.cylinders', len(radii))
        span.set_attribute('flagged', len(result.flagged))
        span.set_attribute('skipped', result.skipped)

    result.records.sort(key=lambda r: (r.cylinder.t0, r.cylinder.x0))
    if result.skipped:
        logger.info(f'Skipped {result.skipped} centers whose cylinders leave the data')
    if result.flagged:
        logger.warning(f'{len(result.flagged)} of {len(result.records)} centers flagged')
    return result
