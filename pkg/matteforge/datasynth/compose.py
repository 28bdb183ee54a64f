from typing import Optional, Union

import numpy as np

from ..image.compose import composite
from ..image.types import check_rgb, check_rgba, split_rgba
from ..imgproc.geometry import cover_resize
from ..shared.settings import SynthConfig
from ..shared.types import RgbaImage, RgbImage
from .masks import make_trimap, make_weak_mask
from .transforms import test_transform, train_transform
from .types import Frame, MattingSample, Origin, Provenance, Rejected, Split


def compose_sample(
    fg: RgbaImage,
    bg: RgbImage,
    rng: np.random.Generator,
    config: SynthConfig,
    split: Split,
    origin: Optional[Origin] = None,
) -> Union[MattingSample, Rejected]:
    """
    bg fitted to the fg canvas -> composite -> split transform -> weak mask -> trimap

    rng draws, in order: transform, mask kernels
    """

    check_rgba(fg)
    check_rgb(bg)
    h, w = fg.shape[:2]

    fitted = cover_resize(bg, h=h, w=w)
    _, alpha = split_rgba(fg)
    frame = Frame(image=composite(fg, fitted), alpha=alpha.copy())

    if split is Split.train:
        frame, record = train_transform(frame, rng=rng, config=config)
    else:
        frame, record = test_transform(frame, config=config)

    weak = make_weak_mask(frame.alpha, rng=rng, config=config)
    if isinstance(weak, Rejected):
        return weak

    trimap = make_trimap(
        weak.mask, kernel=config.trimap_kernel, repeats=config.trimap_repeats
    )
    provenance = (
        Provenance(
            origin=origin,
            dilation=weak.dilation,
            erosion=weak.erosion,
            transform=record,
        )
        if origin
        else None
    )
    return MattingSample(
        image=frame.image,
        alpha=frame.alpha,
        mask=weak.mask,
        trimap=trimap,
        provenance=provenance,
    )
