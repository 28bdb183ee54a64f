from dataclasses import dataclass
from typing import Sequence

from ..shared.settings import Settings
from ..shared.types import MatteError


class MetricError(MatteError):
    ...


@dataclass(frozen=True)
class SampleMetrics:
    """
    Raw values; grad and conn are shown x 1e-3 in reports
    """

    id: str
    mse: float
    sad: float
    grad: float
    conn: float


@dataclass(frozen=True)
class Aggregate:
    mse: float
    sad: float
    grad: float
    conn: float
    grad_display: float
    conn_display: float


@dataclass(frozen=True)
class MetricReport:
    samples: Sequence[SampleMetrics]
    mean: Aggregate


@dataclass(frozen=True)
class Summary:
    count: int
    ids: Sequence[str]
    mean: Aggregate
    settings: Settings
