from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.typing import NDArray

from ..shared.types import MatteError


class GaborError(MatteError):
    ...


@dataclass(frozen=True)
class GaborParams:
    wavelength: float
    orientation: float
    phase: float
    sigma: float
    aspect: float
    size: int


@dataclass(frozen=True)
class GaborBank:
    params: Sequence[GaborParams]
    kernels: Sequence[NDArray[np.float64]]
