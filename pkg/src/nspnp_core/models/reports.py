import math
from typing import Annotated, Optional

from pydantic import BaseModel, PlainSerializer


def finite_or_none(value: float) -> Optional[float]:
    return float(value) if math.isfinite(value) else None


JsonFloat = Annotated[
    float, PlainSerializer(finite_or_none, return_type=Optional[float], when_used='json')
]
"""A float written as ``null`` to JSON when it is NaN or infinite."""


class Manifest(BaseModel):
    config_sha256: str
    outputs: dict[str, str]
    """sha256 of every output, keyed by its path relative to the manifest."""

    seed: Optional[int] = None
    snapshots: Optional[int] = None
    ledger: Optional[dict[str, Optional[JsonFloat]]] = None


class HorizonSummary(BaseModel):
    steps: int
    T: JsonFloat
    ratio: JsonFloat
    target: float


class HorizonTrialSummary(BaseModel):
    steps: int
    T: JsonFloat
    ratio: JsonFloat


class PicardReport(BaseModel):
    iterations: int
    converged_T: JsonFloat
    final_ratio: Optional[JsonFloat] = None
    horizon: HorizonSummary
    trials: list[HorizonTrialSummary] = []
