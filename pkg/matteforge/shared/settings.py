from dataclasses import dataclass
from enum import Enum, auto
from pathlib import Path
from typing import Optional, Sequence


class HoldoutCrop(Enum):
    center = auto()
    resize = auto()


@dataclass(frozen=True)
class SynthConfig:
    rotations: int
    flip: bool

    mask_kernel_min: int
    mask_kernel_max: int
    reject: bool
    rejection_ratio: float

    short_side: int
    crop: int
    crop_min: int
    test_crop: HoldoutCrop
    hue_range: float

    trimap_kernel: int
    trimap_repeats: int

    test_fraction: float
    workers: int


@dataclass(frozen=True)
class LossWeights:
    g: float
    l: float
    gb: float
    adv: float
    gp: float
    epsilon: float
    dilation: int


@dataclass(frozen=True)
class TrainConfig:
    lr: float
    beta1: float
    beta2: float
    batch_size: int
    steps: int
    warmup_fraction: float
    checkpoint_every: int
    max_skip_fraction: float
    loader_workers: int
    device: str


@dataclass(frozen=True)
class GuidedFilterParams:
    radius: int
    eps: float
    subsample: int


@dataclass(frozen=True)
class GeneratorConfig:
    in_channels: int
    encoder_channels: Sequence[int]
    depthwise_stages: int
    bottleneck_blocks: int
    decoder_channels: Sequence[int]
    head_upsample: int


@dataclass(frozen=True)
class DiscriminatorConfig:
    in_channels: int
    channels: Sequence[int]
    kernel_size: int
    batch_norm_from: int
    power_iterations: int
    negative_slope: float


@dataclass(frozen=True)
class EvalConfig:
    workers: int


@dataclass(frozen=True)
class BenchConfig:
    batch_sizes: Sequence[int]
    repeats: int
    warmup: int
    size: int
    device: str


@dataclass(frozen=True)
class PathsConfig:
    foregrounds: Optional[Path]
    backgrounds: Optional[Path]
    dataset: Optional[Path]
    output: Optional[Path]
    checkpoint: Optional[Path]


@dataclass(frozen=True)
class Settings:
    seed: Optional[int]
    synth: SynthConfig
    train: TrainConfig
    loss: LossWeights
    guided_filter: GuidedFilterParams
    generator: GeneratorConfig
    discriminator: DiscriminatorConfig
    eval: EvalConfig
    bench: BenchConfig
    paths: PathsConfig
