"""
Joint (image, alpha) transforms

Weak masks and trimaps are derived after these, at output resolution.
"""

from typing import Tuple

import numpy as np

from ..image.compose import shift_hue
from ..image.types import same_extent
from ..imgproc.geometry import center_crop, crop, resize_bilinear, short_side_extent
from ..shared.settings import HoldoutCrop, SynthConfig
from .types import Frame, Split, SynthError, TransformRecord


def _resize(frame: Frame, h: int, w: int) -> Frame:
    image = np.clip(resize_bilinear(frame.image, h=h, w=w), 0, 1)
    alpha = np.clip(resize_bilinear(frame.alpha, h=h, w=w), 0, 1)
    return Frame(image=image, alpha=alpha)


def _short_side(frame: Frame, config: SynthConfig) -> Frame:
    h, w = same_extent(frame.image, frame.alpha)
    if min(h, w) < 1:
        raise SynthError(f"empty frame -- {h}x{w}")
    nh, nw = short_side_extent(h, w, side=config.short_side)
    return _resize(frame, h=nh, w=nw)


def train_transform(
    frame: Frame, rng: np.random.Generator, config: SynthConfig
) -> Tuple[Frame, TransformRecord]:
    """
    short side -> random square crop in [crop_min, short_side] -> crop x crop -> hue jitter
    """

    resized = _short_side(frame, config=config)
    h, w = resized.alpha.shape
    side = int(rng.integers(config.crop_min, config.short_side + 1))
    if side > min(h, w):
        raise SynthError(f"crop side {side} exceeds source {h}x{w}")
    top = int(rng.integers(0, h - side + 1))
    left = int(rng.integers(0, w - side + 1))
    delta = float(rng.uniform(-config.hue_range, config.hue_range))

    cropped = Frame(
        image=crop(resized.image, top=top, left=left, h=side, w=side),
        alpha=crop(resized.alpha, top=top, left=left, h=side, w=side),
    )
    out = _resize(cropped, h=config.crop, w=config.crop)
    jittered = Frame(image=shift_hue(out.image, delta=delta), alpha=out.alpha)

    record = TransformRecord(
        split=Split.train, resized=(h, w), crop=(top, left, side, side), hue=delta
    )
    return jittered, record


def test_transform(frame: Frame, config: SynthConfig) -> Tuple[Frame, TransformRecord]:
    resized = _short_side(frame, config=config)
    h, w = resized.alpha.shape

    if config.test_crop is HoldoutCrop.center:
        side = config.short_side
        if side > min(h, w):
            raise SynthError(f"centre crop {side} exceeds source {h}x{w}")
        box = ((h - side) // 2, (w - side) // 2, side, side)
        cropped = Frame(
            image=center_crop(resized.image, h=side, w=side),
            alpha=center_crop(resized.alpha, h=side, w=side),
        )
    else:
        box = (0, 0, h, w)
        cropped = resized

    out = _resize(cropped, h=config.crop, w=config.crop)
    record = TransformRecord(split=Split.test, resized=(h, w), crop=box, hue=0.0)
    return out, record