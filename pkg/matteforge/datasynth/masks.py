from typing import Optional, Tuple, Union

import numpy as np

from ..image.types import Label
from ..imgproc.morph import (
    StructuringElement,
    binarize,
    dilate,
    dilate_n,
    erode,
    erode_n,
)
from ..shared.settings import SynthConfig
from ..shared.types import GrayMap, Trimap
from .types import Rejected, WeakMask


def draw_kernels(rng: np.random.Generator, config: SynthConfig) -> Tuple[int, int]:
    k1, k2 = rng.integers(config.mask_kernel_min, config.mask_kernel_max + 1, size=2)
    return int(k1), int(k2)


def make_weak_mask(
    alpha: GrayMap,
    rng: np.random.Generator,
    config: SynthConfig,
    kernels: Optional[Tuple[int, int]] = None,
) -> Union[WeakMask, Rejected]:
    """
    binarize(alpha) -> dilate(k1) -> erode(k2), independent k1, k2

    Zero foreground area is always rejected; the area ratio rule only when enabled
    """

    foreground = binarize(alpha, threshold=0.5)
    area = foreground.sum()
    if not area:
        return Rejected(reason="empty foreground")

    k1, k2 = kernels or draw_kernels(rng, config=config)
    mask = erode(dilate(foreground, StructuringElement(k1)), StructuringElement(k2))

    kept = mask.sum()
    if config.reject and kept < config.rejection_ratio * area:
        return Rejected(
            reason=f"mask area {int(kept)} < {config.rejection_ratio} x {int(area)} (k1={k1}, k2={k2})"
        )
    return WeakMask(mask=mask, dilation=k1, erosion=k2)


def make_trimap(mask: GrayMap, kernel: int, repeats: int) -> Trimap:
    se = StructuringElement(kernel)
    grown = dilate_n(mask, se=se, repeats=repeats)
    shrunk = erode_n(mask, se=se, repeats=repeats)

    trimap = np.full(mask.shape, Label.UNKNOWN, dtype=np.uint8)
    trimap[shrunk >= 1] = Label.FG
    trimap[grown <= 0] = Label.BG
    return trimap
