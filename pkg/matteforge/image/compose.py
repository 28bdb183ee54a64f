import numpy as np
from skimage.color import hsv2rgb, rgb2hsv

from ..shared.types import RgbaImage, RgbImage
from .types import ImageError, check_rgb, check_rgba, same_extent, split_rgba


def composite(fg: RgbaImage, bg: RgbImage) -> RgbImage:
    """
    I = aF + (1 - a)B
    """

    check_rgba(fg)
    check_rgb(bg)
    same_extent(fg, bg)

    color, alpha = split_rgba(fg)
    a = alpha[..., None]
    out = a * color + (1 - a) * bg
    return np.clip(out, 0, 1)


def shift_hue(image: RgbImage, delta: float) -> RgbImage:
    check_rgb(image)
    if not -0.5 <= delta <= 0.5:
        raise ImageError(f"hue delta outside [-0.5, 0.5] -- {delta}")

    if delta == 0:
        return image.copy()

    hsv = rgb2hsv(image)
    hsv[..., 0] = np.mod(hsv[..., 0] + delta, 1)
    return np.clip(hsv2rgb(hsv), 0, 1)


def premultiply(rgba: RgbaImage) -> RgbaImage:
    color, alpha = split_rgba(rgba)
    return np.concatenate((color * alpha[..., None], alpha[..., None]), axis=2)


def unpremultiply(rgba: RgbaImage) -> RgbaImage:
    color, alpha = split_rgba(rgba)
    a = alpha[..., None]
    with np.errstate(divide="ignore", invalid="ignore"):
        straight = np.where(a > 0, color / np.where(a > 0, a, 1), 0)
    return np.clip(np.concatenate((straight, a), axis=2), 0, 1)
