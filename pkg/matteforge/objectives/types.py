from dataclasses import dataclass
from typing import Callable

from torch import Tensor

from ..shared.types import MatteError

# (alpha, image, mask) -> patch logits
Critic = Callable[[Tensor, Tensor, Tensor], Tensor]


class LossError(MatteError):
    ...


@dataclass(frozen=True)
class LossTerms:
    """
    Unweighted generator terms
    """

    g: Tensor
    l: Tensor
    gb: Tensor
    adv: Tensor
