from enum import IntEnum
from typing import Tuple

import numpy as np

from ..shared.types import (
    Extent,
    GrayMap,
    MatteError,
    RgbaImage,
    RgbImage,
    Trimap,
)


class ImageError(MatteError):
    ...


class Label(IntEnum):
    BG = 0
    UNKNOWN = 128
    FG = 255


LEVELS = frozenset(int(label) for label in Label)


def extent(image: np.ndarray) -> Extent:
    h, w = image.shape[:2]
    return h, w


def same_extent(*images: np.ndarray) -> Extent:
    ext, *rest = map(extent, images)
    for other in rest:
        if other != ext:
            raise ImageError(f"extent mismatch -- {ext} != {other}")
    return ext


def _check_unit(image: np.ndarray) -> None:
    if image.size and not np.all(np.isfinite(image)):
        raise ImageError("non finite pixel values")
    if image.size and (image.min() < 0 or image.max() > 1):
        raise ImageError(
            f"pixel values outside [0, 1] -- [{image.min()}, {image.max()}]"
        )


def _check_extent(image: np.ndarray) -> None:
    h, w = image.shape[:2]
    if h < 1 or w < 1:
        raise ImageError(f"empty extent -- {h}x{w}")


def check_gray(image: np.ndarray) -> GrayMap:
    if image.ndim != 2:
        raise ImageError(f"expected a (H, W) map, got {image.shape}")
    _check_extent(image)
    _check_unit(image)
    return image


def check_rgb(image: np.ndarray) -> RgbImage:
    if image.ndim != 3 or image.shape[2] != 3:
        raise ImageError(f"expected a (H, W, 3) image, got {image.shape}")
    _check_extent(image)
    _check_unit(image)
    return image


def check_rgba(image: np.ndarray) -> RgbaImage:
    if image.ndim != 3 or image.shape[2] != 4:
        raise ImageError(f"expected a (H, W, 4) image, got {image.shape}")
    _check_extent(image)
    _check_unit(image)
    return image


def check_trimap(trimap: np.ndarray) -> Trimap:
    if trimap.ndim != 2:
        raise ImageError(f"expected a (H, W) trimap, got {trimap.shape}")
    _check_extent(trimap)
    levels = {int(v) for v in np.unique(trimap)}
    if not levels <= LEVELS:
        raise ImageError(f"trimap levels outside 0/128/255 -- {sorted(levels - LEVELS)}")
    return trimap.astype(np.uint8)


def split_rgba(rgba: RgbaImage) -> Tuple[RgbImage, GrayMap]:
    return rgba[..., :3], rgba[..., 3]


def join_rgba(rgb: RgbImage, alpha: GrayMap) -> RgbaImage:
    same_extent(rgb, alpha)
    return np.concatenate((rgb, alpha[..., None]), axis=2)


def as_rgb(image: np.ndarray) -> RgbImage:
    """
    Grey is replicated, alpha dropped
    """

    if image.ndim == 2:
        return np.repeat(image[..., None], 3, axis=2)
    elif image.ndim == 3 and image.shape[2] in {3, 4}:
        return np.ascontiguousarray(image[..., :3])
    else:
        raise ImageError(f"cannot read {image.shape} as RGB")


def as_gray(image: np.ndarray) -> GrayMap:
    if image.ndim == 2:
        return image
    elif image.ndim == 3 and image.shape[2] in {3, 4}:
        return image[..., :3].mean(axis=2)
    else:
        raise ImageError(f"cannot read {image.shape} as a single plane")
