from dataclasses import dataclass

from torch import Tensor

from ..shared.types import MatteError


class NetworkError(MatteError):
    ...


class CheckpointError(MatteError):
    ...


@dataclass(frozen=True)
class CoefficientMaps:
    """
    A: (N, 3, H, W), B: (N, 1, H, W)
    """

    A: Tensor
    B: Tensor
