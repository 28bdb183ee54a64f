from dataclasses import dataclass
from typing import Sequence, Tuple

import torch
from torch import Tensor
from torch.optim import Optimizer

from ..network.discriminator import Discriminator
from ..network.generator import Generator
from ..shared.types import MatteError


class TrainError(MatteError):
    ...


@dataclass(frozen=True)
class Batch:
    ids: Sequence[str]
    image: Tensor
    alpha: Tensor
    mask: Tensor
    # (id, reason) of samples dropped from this batch
    skipped: Sequence[Tuple[str, str]]


@dataclass(frozen=True)
class TrainState:
    generator: Generator
    discriminator: Discriminator
    opt_g: Optimizer
    opt_d: Optimizer
    gp_rng: torch.Generator


@dataclass(frozen=True)
class StepRecord:
    step: int
    L_g: float
    L_l: float
    L_gb: float
    L_G: float
    L_D: float
    GP: float
    lr: float
