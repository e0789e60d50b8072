"""The ``analysis.json`` document of a regularity scan."""

from typing import Optional

from pydantic import BaseModel

from nspnp_core.fields import ParabolicCylinder
from nspnp_core.models.parameters import RegularityConfig
from nspnp_core.models.reports import JsonFloat
from nspnp_core.regularity.probes import LocalEnergyBalance
from nspnp_core.regularity.scan import ScanRecord, ScanResult
from nspnp_core.regularity.vitali import VitaliBound


class AnalysisSummary(BaseModel):
    centers: int
    flagged: int
    skipped: int
    errors: list[str] = []
    vitali_cover: JsonFloat = 0.0
    vitali_bound: JsonFloat = 0.0
    epsilon0: float
    epsilon1: float
    radii: list[float]


class LocalEnergySummary(BaseModel):
    dissipation: JsonFloat
    right_hand_side: JsonFloat
    residual: JsonFloat


class AnalysisReport(BaseModel):
    summary: AnalysisSummary
    records: list[ScanRecord] = []
    vitali: list[ParabolicCylinder] = []
    """Disjoint cylinders selected for the covering estimate."""

    local_energy: Optional[LocalEnergySummary] = None

    @classmethod
    def build(
        cls,
        result: ScanResult,
        cover: VitaliBound,
        probe: Optional[LocalEnergyBalance],
        config: RegularityConfig,
    ) -> 'AnalysisReport':
        return cls(
            summary=AnalysisSummary(
                **result.summary(),
                vitali_cover=cover.cover_sum,
                vitali_bound=cover.bound,
                epsilon0=config.epsilon0,
                epsilon1=config.epsilon1,
                radii=list(config.radii),
            ),
            records=result.records,
            vitali=list(cover.selected),
            local_energy=LocalEnergySummary(**probe._asdict()) if probe is not None else None,
        )
