from math import ceil, floor

import cv2
import numpy as np
from numpy.typing import NDArray

from ..image.types import ImageError
from ..shared.types import Extent


def _round(x: float) -> int:
    return floor(x + 0.5)


def resize_bilinear(image: NDArray[np.float64], h: int, w: int) -> NDArray[np.float64]:
    """
    Half pixel centre alignment
    """

    if h < 1 or w < 1:
        raise ImageError(f"resize target must be >= 1 -- {h}x{w}")
    if image.ndim not in {2, 3}:
        raise ImageError(f"expected (H, W) or (H, W, C) -- {image.shape}")

    if image.shape[:2] == (h, w):
        return image.astype(np.float64, copy=True)

    src = np.ascontiguousarray(image, dtype=np.float64)
    resized = cv2.resize(src, (w, h), interpolation=cv2.INTER_LINEAR)
    if image.ndim == 3 and resized.ndim == 2:
        resized = resized[..., None]
    return resized


def crop(
    image: NDArray[np.float64], top: int, left: int, h: int, w: int
) -> NDArray[np.float64]:
    ih, iw = image.shape[:2]
    if h < 1 or w < 1 or top < 0 or left < 0 or top + h > ih or left + w > iw:
        raise ImageError(
            f"crop rectangle ({top}, {left}, {h}, {w}) outside image {ih}x{iw}"
        )
    return image[top : top + h, left : left + w].copy()


def center_crop(image: NDArray[np.float64], h: int, w: int) -> NDArray[np.float64]:
    ih, iw = image.shape[:2]
    return crop(image, top=(ih - h) // 2, left=(iw - w) // 2, h=h, w=w)


def flip_horizontal(image: NDArray[np.float64]) -> NDArray[np.float64]:
    return image[:, ::-1].copy()


def short_side_extent(h: int, w: int, side: int) -> Extent:
    if h <= w:
        return side, _round(w * side / h)
    else:
        return _round(h * side / w), side


def cover_resize(image: NDArray[np.float64], h: int, w: int) -> NDArray[np.float64]:
    """
    Scale preserving aspect until (h, w) is covered, then centre crop
    """

    ih, iw = image.shape[:2]
    scale = max(h / ih, w / iw)
    nh, nw = max(h, _round(ih * scale)), max(w, _round(iw * scale))
    return center_crop(resize_bilinear(image, h=nh, w=nw), h=h, w=w)


def rotated_extent(h: int, w: int, degrees: float) -> Extent:
    rad = np.deg2rad(degrees)
    c, s = abs(np.cos(rad)), abs(np.sin(rad))
    nh = ceil(round(h * c + w * s, 6))
    nw = ceil(round(w * c + h * s, 6))
    return nh, nw


def rotate_expand(image: NDArray[np.float64], degrees: float) -> NDArray[np.float64]:
    """
    Counter clockwise about the centre, canvas grown to the rotated bounds, zero fill
    """

    if image.ndim not in {2, 3}:
        raise ImageError(f"expected (H, W) or (H, W, C) -- {image.shape}")
    if degrees % 360 == 0:
        return image.astype(np.float64, copy=True)

    h, w = image.shape[:2]
    nh, nw = rotated_extent(h, w, degrees=degrees)

    m = cv2.getRotationMatrix2D(((w - 1) / 2, (h - 1) / 2), degrees, 1.0)
    m[0, 2] += (nw - w) / 2
    m[1, 2] += (nh - h) / 2

    src = np.ascontiguousarray(image, dtype=np.float64)
    rotated = cv2.warpAffine(
        src,
        m,
        (nw, nh),
        flags=cv2.INTER_LINEAR,
        borderMode=cv2.BORDER_CONSTANT,
        borderValue=0,
    )
    if image.ndim == 3 and rotated.ndim == 2:
        rotated = rotated[..., None]
    return np.clip(rotated, 0, 1)
