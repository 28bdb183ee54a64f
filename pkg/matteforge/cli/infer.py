"""
`infer` and `gf`: one alpha PNG per (image, mask) pair, file or directory mode
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np
import torch
from tqdm import tqdm

from ..guidedfilter.filter import fast_guided_filter
from ..image.png import load_png, save_png
from ..image.types import as_gray, as_rgb, same_extent
from ..imgproc.morph import binarize
from ..lang import LANG
from ..network.checkpoint import load_generator
from ..network.generator import Generator
from ..shared.accel import pick_device
from ..shared.logging import log
from ..shared.settings import GuidedFilterParams
from ..shared.timeit import timeit
from ..shared.types import GrayMap, RgbImage
from .types import UsageError


@dataclass(frozen=True)
class Job:
    image: Path
    mask: Path
    out: Path


def _pngs(directory: Path) -> Mapping[str, Path]:
    if not directory.is_dir():
        raise UsageError(f"not a directory -- {directory}")
    return {
        path.stem: path
        for path in directory.iterdir()
        if path.is_file() and path.suffix.casefold() == ".png"
    }


def plan_jobs(
    image: Optional[Path],
    mask: Optional[Path],
    out: Optional[Path],
    image_dir: Optional[Path],
    mask_dir: Optional[Path],
    out_dir: Optional[Path],
) -> Sequence[Job]:
    files, dirs = (image, mask, out), (image_dir, mask_dir, out_dir)
    if all(files) and not any(dirs):
        assert image and mask and out
        return (Job(image=image, mask=mask, out=out),)
    elif all(dirs) and not any(files):
        assert image_dir and mask_dir and out_dir
        images, masks = _pngs(image_dir), _pngs(mask_dir)
        if missing := images.keys() - masks.keys():
            raise UsageError(f"{mask_dir} lacks {', '.join(sorted(missing))}")
        if not images:
            raise UsageError(f"no PNG files in {image_dir}")
        return tuple(
            Job(image=images[stem], mask=masks[stem], out=out_dir / f"{stem}.png")
            for stem in sorted(images)
        )
    else:
        raise UsageError(
            "give either --image --mask --out or --image-dir --mask-dir --out-dir"
        )


def _read(job: Job) -> Tuple[RgbImage, GrayMap]:
    image, mask = as_rgb(load_png(job.image)), as_gray(load_png(job.mask))
    same_extent(image, mask)
    return image, mask


def predict_alpha(
    generator: Generator, image: RgbImage, mask: GrayMap, device: torch.device
) -> GrayMap:
    """
    Edge padded up to the generator's stride, cropped back afterwards
    """

    h, w = mask.shape
    d = generator.divisor
    pad = ((0, -h % d), (0, -w % d))
    img = np.pad(image, pad + ((0, 0),), mode="edge")
    msk = np.pad(mask, pad, mode="edge")

    x = torch.from_numpy(img.transpose(2, 0, 1)[None].astype(np.float32)).to(device)
    m = torch.from_numpy(msk[None, None].astype(np.float32)).to(device)
    with torch.no_grad():
        alpha = generator.predict(x, m)
    out = alpha[0, 0, :h, :w].clamp(0, 1).cpu().numpy()
    return out.astype(np.float64)


def run_infer(jobs: Sequence[Job], checkpoint: Path, device: str) -> int:
    dev = pick_device(device)
    generator, _ = load_generator(checkpoint, device=dev)
    with timeit("infer", checkpoint):
        for job in tqdm(jobs, desc="infer", unit="image"):
            image, mask = _read(job)
            alpha = predict_alpha(generator, image=image, mask=binarize(mask), device=dev)
            job.out.parent.mkdir(parents=True, exist_ok=True)
            save_png(alpha, path=job.out)
    return len(jobs)


def run_gf(jobs: Sequence[Job], params: GuidedFilterParams) -> int:
    msg = LANG(
        "baseline params",
        radius=params.radius,
        eps=params.eps,
        subsample=params.subsample,
    )
    log.info("%s", msg)
    with timeit("gf"):
        for job in tqdm(jobs, desc="gf", unit="image"):
            image, mask = _read(job)
            alpha = fast_guided_filter(image, mask, params=params)
            job.out.parent.mkdir(parents=True, exist_ok=True)
            save_png(alpha, path=job.out)
    return len(jobs)
