from dataclasses import replace
from unittest import TestCase

import numpy as np

from ...matteforge.datasynth.compose import compose_sample
from ...matteforge.datasynth.types import (
    MattingSample,
    Origin,
    Rejected,
    Split,
    VariantSpec,
)
from ...matteforge.image.types import LEVELS
from ...matteforge.imgproc.morph import binarize
from ...matteforge.shared.config import load_settings


def _config(**kwds: object):
    return replace(load_settings().synth, **kwds)


def _foreground(h: int, w: int) -> np.ndarray:
    fg = np.zeros((h, w, 4))
    fg[..., :3] = (0.3, 0.6, 0.9)
    fg[h // 4 : 3 * h // 4, w // 4 : 3 * w // 4, 3] = 1.0
    return fg


class ComposeSample(TestCase):
    def test_1(self) -> None:
        fg = np.ones((600, 600, 4))
        fg[..., :3] = (0.3, 0.6, 0.9)
        bg = np.random.default_rng(0).uniform(0, 1, size=(300, 500, 3))
        sample = compose_sample(
            fg, bg, rng=np.random.default_rng(1), config=_config(), split=Split.test
        )
        assert isinstance(sample, MattingSample)
        self.assertTrue(np.allclose(sample.image, (0.3, 0.6, 0.9), atol=1e-9))
        self.assertTrue(np.allclose(sample.alpha, 1.0))

    def test_2(self) -> None:
        fg = np.zeros((600, 600, 4))
        bg = np.random.default_rng(2).uniform(0, 1, size=(600, 600, 3))
        for reject in (True, False):
            sample = compose_sample(
                fg,
                bg,
                rng=np.random.default_rng(3),
                config=_config(reject=reject),
                split=Split.train,
            )
            self.assertIsInstance(sample, Rejected)

    def test_3(self) -> None:
        fg = _foreground(640, 700)
        bg = np.random.default_rng(4).uniform(0, 1, size=(480, 480, 3))
        runs = [
            compose_sample(
                fg, bg, rng=np.random.default_rng(5), config=_config(), split=Split.train
            )
            for _ in range(2)
        ]
        a, b = runs
        assert isinstance(a, MattingSample) and isinstance(b, MattingSample)
        self.assertTrue(np.array_equal(a.image, b.image))
        self.assertTrue(np.array_equal(a.mask, b.mask))
        self.assertTrue(np.array_equal(a.trimap, b.trimap))

    def test_4(self) -> None:
        fg = _foreground(640, 700)
        bg = np.random.default_rng(6).uniform(0, 1, size=(480, 480, 3))
        spec = VariantSpec(index=0, angle=0.0, flip=False)
        origin = Origin(
            foreground="fg.png",
            background="bg.png",
            variant=spec,
            split=Split.train,
            seed=7,
            spawn_key=(2, 0, 0),
        )
        sample = compose_sample(
            fg,
            bg,
            rng=np.random.default_rng(7),
            config=_config(),
            split=Split.train,
            origin=origin,
        )
        assert isinstance(sample, MattingSample)
        assert sample.provenance is not None and sample.trimap is not None
        self.assertEqual(sample.provenance.origin, origin)
        for plane in (sample.image, sample.alpha, sample.mask, sample.trimap):
            self.assertEqual(plane.shape[:2], (512, 512))
        self.assertTrue(np.isin(sample.mask, (0, 1)).all())
        self.assertTrue(set(np.unique(sample.trimap).tolist()) <= LEVELS)
        self.assertGreaterEqual(sample.mask.sum(), 0.5 * binarize(sample.alpha).sum())
