"""
Procedural foregrounds / backgrounds, the desk scale stand in for photographed objects
"""

from pathlib import Path
from typing import Sequence, Tuple

import cv2
import numpy as np

from ..image.png import save_png
from ..image.types import join_rgba
from ..lang import LANG
from ..shared.logging import log
from ..shared.types import GrayMap, RgbaImage, RgbImage
from .types import SynthError

_SUPERSAMPLE = 4
_SHAPES = (2, 6)
_WAVES = 4

_FOREGROUND = 1
_BACKGROUND = 2


def _shape_mask(rng: np.random.Generator, size: int) -> GrayMap:
    big = size * _SUPERSAMPLE
    canvas = np.zeros((big, big), dtype=np.uint8)
    lo, hi = big * 0.25, big * 0.75

    for _ in range(int(rng.integers(*_SHAPES, endpoint=True))):
        cx, cy = rng.uniform(lo, hi, size=2)
        if rng.random() < 0.5:
            axes = rng.uniform(big * 0.06, big * 0.22, size=2)
            cv2.ellipse(
                canvas,
                center=(int(cx), int(cy)),
                axes=(int(axes[0]), int(axes[1])),
                angle=float(rng.uniform(0, 180)),
                startAngle=0,
                endAngle=360,
                color=255,
                thickness=-1,
                lineType=cv2.LINE_AA,
            )
        else:
            n = int(rng.integers(3, 8, endpoint=True))
            theta = np.sort(rng.uniform(0, 2 * np.pi, size=n))
            radii = rng.uniform(big * 0.05, big * 0.2, size=n)
            pts = np.stack(
                (cx + radii * np.cos(theta), cy + radii * np.sin(theta)), axis=1
            )
            cv2.fillPoly(
                canvas,
                [np.round(pts).astype(np.int32)],
                color=255,
                lineType=cv2.LINE_AA,
            )

    small = cv2.resize(canvas, (size, size), interpolation=cv2.INTER_AREA)
    return small.astype(np.float64) / 255


def _colour_field(rng: np.random.Generator, size: int) -> RgbImage:
    yy, xx = np.mgrid[0:size, 0:size] / max(size - 1, 1)
    base = rng.uniform(0, 1, size=3)
    tilt = rng.uniform(-0.4, 0.4, size=(2, 3))
    field = base + yy[..., None] * tilt[0] + xx[..., None] * tilt[1]
    return np.clip(field, 0, 1)


def procedural_foreground(rng: np.random.Generator, size: int) -> RgbaImage:
    """
    Anti-aliased union of random ellipses and polygons over a smooth colour field
    """

    if size < 8:
        raise SynthError(f"procedural size too small -- {size}")
    alpha = _shape_mask(rng, size=size)
    while not np.any(alpha > 0.5):
        alpha = _shape_mask(rng, size=size)
    return join_rgba(_colour_field(rng, size=size), alpha)


def procedural_background(rng: np.random.Generator, size: int) -> RgbImage:
    if size < 8:
        raise SynthError(f"procedural size too small -- {size}")
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64)
    planes = np.zeros((size, size, 3))

    for c in range(3):
        for _ in range(_WAVES):
            theta = rng.uniform(0, np.pi)
            freq = rng.uniform(1, 24) * 2 * np.pi / size
            phase = rng.uniform(0, 2 * np.pi)
            along = xx * np.cos(theta) + yy * np.sin(theta)
            planes[..., c] += rng.uniform(0.2, 1) * np.sin(freq * along + phase)

    noise = rng.standard_normal((size, size, 3))
    planes += cv2.GaussianBlur(noise, ksize=(0, 0), sigmaX=2.0)

    lo, hi = planes.min(), planes.max()
    return (planes - lo) / (hi - lo) if hi > lo else np.zeros_like(planes)


def write_procedural(
    fg_dir: Path, bg_dir: Path, count: int, seed: int, size: int
) -> Tuple[Sequence[Path], Sequence[Path]]:
    if count < 1:
        raise SynthError(f"procedural count < 1 -- {count}")
    fg_dir.mkdir(parents=True, exist_ok=True)
    bg_dir.mkdir(parents=True, exist_ok=True)

    fgs, bgs = [], []
    for idx in range(count):
        fg_rng = np.random.default_rng(
            np.random.SeedSequence(seed, spawn_key=(_FOREGROUND, idx))
        )
        bg_rng = np.random.default_rng(
            np.random.SeedSequence(seed, spawn_key=(_BACKGROUND, idx))
        )
        fg_path = fg_dir / f"fg_{idx:04d}.png"
        bg_path = bg_dir / f"bg_{idx:04d}.png"
        save_png(procedural_foreground(fg_rng, size=size), path=fg_path)
        save_png(procedural_background(bg_rng, size=size), path=bg_path)
        fgs.append(fg_path)
        bgs.append(bg_path)

    msg = LANG(
        "procedural written", count=count, fg_dir=str(fg_dir), bg_dir=str(bg_dir)
    )
    log.info("%s", msg)
    return fgs, bgs
