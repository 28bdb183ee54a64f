from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase

import numpy as np
import torch

from ...matteforge.image.png import save_png
from ...matteforge.trainer.data import (
    MattingDataset,
    StepSampler,
    batch_indices,
    collate,
    epoch_order,
)
from ...matteforge.trainer.types import TrainError


def _write(root: Path, sample_id: str, h: int = 8, w: int = 8) -> None:
    rng = np.random.default_rng(len(sample_id))
    for plane, shape in (("image", (h, w, 3)), ("alpha", (h, w)), ("mask", (h, w))):
        (root / plane).mkdir(parents=True, exist_ok=True)
        save_png(rng.uniform(0, 1, size=shape), root / plane / f"{sample_id}.png")


class Order(TestCase):
    def test_1(self) -> None:
        order = epoch_order(0, epoch=0, count=10)
        self.assertEqual(sorted(order), list(range(10)))
        self.assertEqual(order, epoch_order(0, epoch=0, count=10))
        self.assertNotEqual(order, epoch_order(0, epoch=1, count=10))

    def test_2(self) -> None:
        batches = [batch_indices(1, step=s, count=10, batch_size=3) for s in range(3)]
        seen = [i for batch in batches for i in batch]
        self.assertEqual(len(seen), 9)
        self.assertEqual(len(set(seen)), 9)
        self.assertEqual(
            batch_indices(1, step=3, count=10, batch_size=3),
            tuple(epoch_order(1, epoch=1, count=10)[:3]),
        )

    def test_3(self) -> None:
        with self.assertRaises(TrainError):
            batch_indices(0, step=0, count=3, batch_size=4)

    def test_4(self) -> None:
        sampler = StepSampler(2, count=10, batch_size=2, start=3, stop=7)
        self.assertEqual(len(sampler), 4)
        self.assertEqual(
            list(sampler),
            [batch_indices(2, step=s, count=10, batch_size=2) for s in range(3, 7)],
        )


class Loading(TestCase):
    def test_1(self) -> None:
        with TemporaryDirectory() as tmp:
            root = Path(tmp)
            _write(root, "000000")
            _write(root, "000001")
            dataset = MattingDataset(root, ids=("000000", "000001"))
            batch = collate([dataset[0], dataset[1]])
            self.assertEqual(batch.ids, ("000000", "000001"))
            self.assertEqual(tuple(batch.image.shape), (2, 3, 8, 8))
            self.assertEqual(tuple(batch.alpha.shape), (2, 1, 8, 8))
            self.assertEqual(batch.mask.dtype, torch.float32)
            self.assertEqual(batch.skipped, ())

    def test_2(self) -> None:
        with TemporaryDirectory() as tmp:
            root = Path(tmp)
            _write(root, "000000")
            _write(root, "000001")
            (root / "alpha" / "000001.png").write_bytes(b"not a png")
            dataset = MattingDataset(root, ids=("000000", "000001"))
            batch = collate([dataset[0], dataset[1]])
            self.assertEqual(batch.ids, ("000000",))
            self.assertEqual([sid for sid, _ in batch.skipped], ["000001"])

    def test_3(self) -> None:
        with TemporaryDirectory() as tmp:
            dataset = MattingDataset(Path(tmp), ids=("000000",))
            with self.assertRaises(TrainError):
                collate([dataset[0]])
