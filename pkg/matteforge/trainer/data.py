"""
Synthesized dataset -> torch batches

Batch order is a pure function of (seed, step), so a resumed run sees the
same batches as an uninterrupted one.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence, Union

import numpy as np
import torch
from torch.utils.data import DataLoader, Dataset, Sampler

from ..image.png import load_png
from ..image.types import ImageError, same_extent
from ..shared.settings import TrainConfig
from .types import Batch, TrainError

_EPOCH = 5


@dataclass(frozen=True)
class _Item:
    id: str
    image: torch.Tensor
    alpha: torch.Tensor
    mask: torch.Tensor


@dataclass(frozen=True)
class _Failed:
    id: str
    reason: str


class MattingDataset(Dataset):
    def __init__(self, root: Path, ids: Sequence[str]) -> None:
        self._root = root
        self._ids = tuple(ids)

    def __len__(self) -> int:
        return len(self._ids)

    def _plane(self, plane: str, sample_id: str) -> np.ndarray:
        return load_png(self._root / plane / f"{sample_id}.png")

    def __getitem__(self, idx: int) -> Union[_Item, _Failed]:
        sample_id = self._ids[idx]
        try:
            image = self._plane("image", sample_id)
            alpha = self._plane("alpha", sample_id)
            mask = self._plane("mask", sample_id)
            if image.ndim != 3 or alpha.ndim != 2 or mask.ndim != 2:
                raise ImageError(
                    f"unexpected layout {image.shape} / {alpha.shape} / {mask.shape}"
                )
            same_extent(image, alpha, mask)
        except ImageError as e:
            return _Failed(id=sample_id, reason=str(e))

        return _Item(
            id=sample_id,
            image=torch.from_numpy(image.transpose(2, 0, 1).astype(np.float32)),
            alpha=torch.from_numpy(alpha[None].astype(np.float32)),
            mask=torch.from_numpy(mask[None].astype(np.float32)),
        )


def epoch_order(seed: int, epoch: int, count: int) -> Sequence[int]:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(_EPOCH, epoch)))
    return tuple(int(i) for i in rng.permutation(count))


def batch_indices(seed: int, step: int, count: int, batch_size: int) -> Sequence[int]:
    """
    Drop last: an epoch is count // batch_size steps
    """

    per_epoch = count // batch_size
    if per_epoch < 1:
        raise TrainError(f"{count} training samples, fewer than one batch of {batch_size}")
    epoch, offset = divmod(step, per_epoch)
    order = epoch_order(seed, epoch=epoch, count=count)
    return order[offset * batch_size : (offset + 1) * batch_size]


class StepSampler(Sampler):
    def __init__(
        self, seed: int, count: int, batch_size: int, start: int, stop: int
    ) -> None:
        self._seed, self._count, self._batch_size = seed, count, batch_size
        self._start, self._stop = start, stop

    def __len__(self) -> int:
        return max(0, self._stop - self._start)

    def __iter__(self) -> Iterator[Sequence[int]]:
        for step in range(self._start, self._stop):
            yield batch_indices(
                self._seed, step=step, count=self._count, batch_size=self._batch_size
            )


def collate(items: Sequence[Union[_Item, _Failed]]) -> Batch:
    good = [item for item in items if isinstance(item, _Item)]
    skipped = tuple((item.id, item.reason) for item in items if isinstance(item, _Failed))
    if not good:
        raise TrainError(f"no readable sample in batch -- {skipped}")
    try:
        return Batch(
            ids=tuple(item.id for item in good),
            image=torch.stack([item.image for item in good]),
            alpha=torch.stack([item.alpha for item in good]),
            mask=torch.stack([item.mask for item in good]),
            skipped=skipped,
        )
    except RuntimeError as e:
        raise TrainError(f"samples of mixed extents in one batch -- {e}")


def make_loader(
    root: Path, ids: Sequence[str], config: TrainConfig, seed: int, start: int
) -> DataLoader:
    dataset = MattingDataset(root, ids=ids)
    sampler = StepSampler(
        seed,
        count=len(dataset),
        batch_size=config.batch_size,
        start=start,
        stop=config.steps,
    )
    return DataLoader(
        dataset,
        batch_sampler=sampler,
        collate_fn=collate,
        num_workers=config.loader_workers,
    )
