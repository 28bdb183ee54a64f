"""
8-bit PNG codec, the only file format in the pipeline.

Pixels are floats in [0, 1] everywhere else; quantization happens here only.
"""

from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from ..shared.types import GrayMap, RgbaImage, RgbImage, Trimap
from .types import ImageError, check_trimap

_MODES = {"L": 1, "RGB": 3, "RGBA": 4}
_SUFFIX = ".png"


def quantize(image: np.ndarray) -> np.ndarray:
    """
    Round half up, 0.5 -> 128
    """

    if image.size and not np.all(np.isfinite(image)):
        raise ImageError("cannot quantize non finite values")
    if image.size and (image.min() < 0 or image.max() > 1):
        raise ImageError(
            f"cannot quantize values outside [0, 1] -- [{image.min()}, {image.max()}]"
        )
    return np.floor(image * 255 + 0.5).astype(np.uint8)


def _open(path: Path) -> Image.Image:
    if not path.is_file():
        raise ImageError(f"missing file -- {path}")
    try:
        img = Image.open(path)
        img.load()
    except (UnidentifiedImageError, OSError) as e:
        raise ImageError(f"unreadable image -- {path} :: {e}")

    if img.format != "PNG":
        raise ImageError(f"not a PNG -- {path} ({img.format})")
    if img.mode not in _MODES:
        raise ImageError(
            f"unsupported bit depth / channel layout -- {path} (mode {img.mode})"
        )
    return img


def load_png(path: Path) -> Union[RgbImage, GrayMap, RgbaImage]:
    img = _open(path)
    return np.asarray(img, dtype=np.float64) / 255


def save_quantized(data: np.ndarray, path: Path) -> None:
    if data.dtype != np.uint8:
        raise ImageError(f"expected 8 bit data -- {data.dtype}")
    if path.suffix.casefold() != _SUFFIX:
        raise ImageError(f"only PNG output is supported -- {path}")
    mode = "L" if data.ndim == 2 else {3: "RGB", 4: "RGBA"}.get(data.shape[2])
    if mode is None:
        raise ImageError(f"cannot encode shape {data.shape} as PNG")
    try:
        Image.fromarray(np.ascontiguousarray(data), mode=mode).save(path, format="PNG")
    except OSError as e:
        raise ImageError(f"unwritable path -- {path} :: {e}")


def save_png(image: Union[RgbImage, GrayMap, RgbaImage], path: Path) -> None:
    save_quantized(quantize(image), path=path)


def load_trimap(path: Path) -> Trimap:
    img = _open(path)
    if img.mode != "L":
        raise ImageError(f"trimap must be single channel -- {path} (mode {img.mode})")
    return check_trimap(np.asarray(img, dtype=np.uint8))


def save_trimap(trimap: Trimap, path: Path) -> None:
    save_quantized(check_trimap(trimap), path=path)
