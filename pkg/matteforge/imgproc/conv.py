from enum import Enum, auto
from math import ceil

import numpy as np
from numpy.typing import NDArray
from scipy.ndimage import correlate

from ..image.types import ImageError


class Padding(Enum):
    zero = auto()
    reflect = auto()


_MODES = {Padding.zero: "constant", Padding.reflect: "mirror"}


def conv2d_same(
    plane: NDArray[np.float64], kernel: NDArray[np.float64], padding: Padding
) -> NDArray[np.float64]:
    """
    Cross correlation, output extent == input extent, not clipped
    """

    if plane.ndim != 2 or kernel.ndim != 2:
        raise ImageError(f"expected 2D map and kernel -- {plane.shape}, {kernel.shape}")
    kh, kw = kernel.shape
    if not kh % 2 or not kw % 2:
        raise ImageError(f"kernel extents must be odd -- {kernel.shape}")
    if not np.all(np.isfinite(kernel)):
        raise ImageError("non finite kernel taps")

    return correlate(
        plane.astype(np.float64),
        kernel.astype(np.float64),
        mode=_MODES[padding],
        cval=0.0,
    )


def _window_sum(x: NDArray[np.float64], r: int, axis: int) -> NDArray[np.float64]:
    n = x.shape[axis]
    head = np.zeros_like(np.take(x, [0], axis=axis))
    integral = np.concatenate((head, np.cumsum(x, axis=axis)), axis=axis)

    idx = np.arange(n)
    hi = np.minimum(idx + r + 1, n)
    lo = np.maximum(idx - r, 0)
    return np.take(integral, hi, axis=axis) - np.take(integral, lo, axis=axis)


def box_sum(x: NDArray[np.float64], r: int) -> NDArray[np.float64]:
    return _window_sum(_window_sum(x, r=r, axis=0), r=r, axis=1)


def box_filter(x: NDArray[np.float64], radius: int) -> NDArray[np.float64]:
    """
    Windowed mean over (2r + 1)^2, edge windows truncated to the image

    Works on (H, W) and (H, W, C)
    """

    if radius < 1:
        raise ImageError(f"box radius must be >= 1 -- {radius}")
    if x.ndim not in {2, 3}:
        raise ImageError(f"expected (H, W) or (H, W, C) -- {x.shape}")

    h, w = x.shape[:2]
    counts = box_sum(np.ones((h, w)), r=radius)
    sums = box_sum(x.astype(np.float64), r=radius)
    return sums / (counts if x.ndim == 2 else counts[..., None])


def gaussian_derivative_kernel(sigma: float) -> NDArray[np.float64]:
    """
    d/dx of a gaussian, scaled so a unit slope ramp responds with 1
    """

    if sigma <= 0:
        raise ImageError(f"sigma must be > 0 -- {sigma}")

    half = ceil(3 * sigma)
    x = np.arange(-half, half + 1, dtype=np.float64)
    g = np.exp(-(x**2) / (2 * sigma**2))
    g /= g.sum()
    d = x * g
    d /= np.sum(x * d)
    return g[:, None] * d[None, :]


def gaussian_derivative_magnitude(
    plane: NDArray[np.float64], sigma: float = 1.4
) -> NDArray[np.float64]:
    kx = gaussian_derivative_kernel(sigma)
    gx = conv2d_same(plane, kx, padding=Padding.reflect)
    gy = conv2d_same(plane, kx.T, padding=Padding.reflect)
    return np.sqrt(gx**2 + gy**2)
