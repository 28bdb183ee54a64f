from dataclasses import dataclass
from enum import Enum, auto
from typing import Optional, Sequence

from ..shared.settings import SynthConfig
from ..shared.types import GrayMap, MatteError, RgbImage, Trimap


class SynthError(MatteError):
    ...


class Split(Enum):
    train = auto()
    test = auto()


@dataclass(frozen=True)
class Rejected:
    reason: str


@dataclass(frozen=True)
class WeakMask:
    mask: GrayMap
    dilation: int
    erosion: int


@dataclass(frozen=True)
class VariantSpec:
    index: int
    angle: float
    flip: bool


@dataclass(frozen=True)
class Frame:
    image: RgbImage
    alpha: GrayMap


@dataclass(frozen=True)
class TransformRecord:
    split: Split
    # extent after the short side resize
    resized: Sequence[int]
    # (top, left, h, w) in the resized frame
    crop: Sequence[int]
    hue: float


@dataclass(frozen=True)
class Origin:
    foreground: str
    background: str
    variant: VariantSpec
    split: Split
    seed: int
    spawn_key: Sequence[int]


@dataclass(frozen=True)
class Provenance:
    origin: Origin
    dilation: int
    erosion: int
    transform: TransformRecord


@dataclass(frozen=True)
class MattingSample:
    image: RgbImage
    alpha: GrayMap
    mask: GrayMap
    trimap: Optional[Trimap]
    provenance: Optional[Provenance]


@dataclass(frozen=True)
class SampleRecord:
    id: str
    provenance: Provenance


@dataclass(frozen=True)
class Manifest:
    schema: int
    seed: int
    foregrounds: str
    backgrounds: str
    config: SynthConfig
    attempted: int
    rejected: int
    samples: Sequence[SampleRecord]
