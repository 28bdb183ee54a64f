from dataclasses import replace
from unittest import TestCase

import numpy as np

from ...matteforge.datasynth.augment import (
    apply_variant,
    augment_foreground,
    rotation_angles,
    variant_specs,
)
from ...matteforge.datasynth.types import VariantSpec
from ...matteforge.shared.config import load_settings


def _foreground(rng: np.random.Generator, h: int = 24, w: int = 32) -> np.ndarray:
    fg = rng.uniform(0, 1, size=(h, w, 4))
    fg[..., 3] = np.round(fg[..., 3])
    return fg


class Variants(TestCase):
    def test_1(self) -> None:
        config = load_settings().synth
        specs = variant_specs(config, rng=np.random.default_rng(0))
        self.assertEqual(len(specs), 22)
        self.assertEqual([s.index for s in specs], list(range(22)))
        self.assertEqual(len({(s.angle, s.flip) for s in specs}), 22)

    def test_2(self) -> None:
        angles = rotation_angles(np.random.default_rng(1), count=11)
        self.assertEqual(len(angles), 11)
        self.assertEqual(angles[0], 0.0)
        self.assertTrue(all(0 <= a < 360 for a in angles))

    def test_3(self) -> None:
        config = replace(load_settings().synth, flip=False, rotations=3)
        specs = variant_specs(config, rng=np.random.default_rng(2))
        self.assertEqual(len(specs), 3)
        self.assertFalse(any(s.flip for s in specs))

    def test_4(self) -> None:
        config = load_settings().synth
        a = variant_specs(config, rng=np.random.default_rng(3))
        b = variant_specs(config, rng=np.random.default_rng(3))
        self.assertEqual(a, b)


class AugmentForeground(TestCase):
    def test_1(self) -> None:
        rng = np.random.default_rng(4)
        fg = _foreground(rng)
        variants = augment_foreground(
            fg, config=load_settings().synth, rng=np.random.default_rng(5)
        )
        self.assertEqual(len(variants), 22)
        self.assertTrue(np.array_equal(variants[0], fg))
        for variant in variants:
            self.assertEqual(variant.shape[2], 4)
            self.assertGreaterEqual(variant.min(), 0)
            self.assertLessEqual(variant.max(), 1)

    def test_2(self) -> None:
        fg = _foreground(np.random.default_rng(6))
        flip = VariantSpec(index=1, angle=0.0, flip=True)
        twice = apply_variant(apply_variant(fg, flip), flip)
        self.assertTrue(np.allclose(twice, fg, atol=1e-6))

    def test_3(self) -> None:
        fg = _foreground(np.random.default_rng(7), h=20, w=40)
        turned = apply_variant(fg, VariantSpec(index=2, angle=90.0, flip=False))
        self.assertEqual(turned.shape[:2], (40, 20))

    def test_4(self) -> None:
        fg = np.zeros((21, 21, 4))
        fg[..., 0] = 1.0
        fg[5:16, 5:16, 3] = 1.0
        turned = apply_variant(fg, VariantSpec(index=2, angle=30.0, flip=False))
        visible = turned[..., 3] > 0.05
        self.assertTrue(np.allclose(turned[visible, 0], 1.0, atol=1e-6))
