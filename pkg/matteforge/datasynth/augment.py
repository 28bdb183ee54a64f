from typing import Sequence

import numpy as np

from ..image.compose import premultiply, unpremultiply
from ..image.types import check_rgba
from ..imgproc.geometry import flip_horizontal, rotate_expand
from ..shared.settings import SynthConfig
from ..shared.types import RgbaImage
from .types import VariantSpec


def rotation_angles(rng: np.random.Generator, count: int) -> Sequence[float]:
    """
    0 first, the rest uniform over [0, 360)
    """

    rest = rng.uniform(0, 360, size=count - 1) if count > 1 else ()
    return (0.0, *map(float, rest))


def variant_specs(config: SynthConfig, rng: np.random.Generator) -> Sequence[VariantSpec]:
    flips = (False, True) if config.flip else (False,)
    angles = rotation_angles(rng, count=config.rotations)
    pairs = ((angle, flip) for angle in angles for flip in flips)
    return tuple(
        VariantSpec(index=idx, angle=angle, flip=flip)
        for idx, (angle, flip) in enumerate(pairs)
    )


def apply_variant(fg: RgbaImage, spec: VariantSpec) -> RgbaImage:
    """
    Flip, then rotate colour and alpha jointly on premultiplied values
    """

    check_rgba(fg)
    flipped = flip_horizontal(fg) if spec.flip else fg.copy()
    if spec.angle % 360 == 0:
        return flipped
    return unpremultiply(rotate_expand(premultiply(flipped), degrees=spec.angle))


def augment_foreground(
    fg: RgbaImage, config: SynthConfig, rng: np.random.Generator
) -> Sequence[RgbaImage]:
    return tuple(apply_variant(fg, spec) for spec in variant_specs(config, rng=rng))
