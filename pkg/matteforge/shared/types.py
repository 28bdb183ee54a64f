from typing import Tuple

import numpy as np
from numpy.typing import NDArray

# (H, W, 3), values in [0, 1]
RgbImage = NDArray[np.float64]
# (H, W), values in [0, 1]; alpha mattes and weak masks alike
GrayMap = NDArray[np.float64]
# (H, W, 4), colour plus straight (non premultiplied) alpha
RgbaImage = NDArray[np.float64]
# (H, W), uint8 levels of `Label`
Trimap = NDArray[np.uint8]
# any real valued plane, unclipped
Plane = NDArray[np.float64]

Extent = Tuple[int, int]


class MatteError(Exception):
    ...


class ConfigError(MatteError):
    ...
