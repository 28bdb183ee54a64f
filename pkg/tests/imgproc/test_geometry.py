from unittest import TestCase

import numpy as np

from ...matteforge.image.types import ImageError
from ...matteforge.imgproc.geometry import (
    center_crop,
    cover_resize,
    crop,
    flip_horizontal,
    resize_bilinear,
    rotate_expand,
    short_side_extent,
)


class ResizeBilinear(TestCase):
    def test_1(self) -> None:
        rng = np.random.default_rng(0)
        x = rng.uniform(size=(6, 9, 3))
        self.assertTrue(np.array_equal(resize_bilinear(x, 6, 9), x))

    def test_2(self) -> None:
        out = resize_bilinear(np.full((5, 7), 0.25), 13, 4)
        self.assertEqual(out.shape, (13, 4))
        self.assertTrue(np.allclose(out, 0.25))

    def test_3(self) -> None:
        out = resize_bilinear(np.array([[0.0, 1.0], [1.0, 0.0]]), 3, 3)
        self.assertAlmostEqual(out[1, 1], 0.5)

    def test_4(self) -> None:
        rng = np.random.default_rng(1)
        x, y = rng.uniform(size=(2, 8, 8))
        lhs = resize_bilinear(0.3 * x + 0.6 * y, 5, 11)
        rhs = 0.3 * resize_bilinear(x, 5, 11) + 0.6 * resize_bilinear(y, 5, 11)
        self.assertTrue(np.allclose(lhs, rhs, atol=1e-6))


class Crop(TestCase):
    def test_1(self) -> None:
        rng = np.random.default_rng(2)
        x = rng.uniform(size=(5, 6))
        self.assertTrue(np.array_equal(crop(x, 0, 0, 5, 6), x))

    def test_2(self) -> None:
        x = np.tile(np.arange(800, dtype=np.float64), (600, 1))
        out = center_crop(x, 600, 600)
        self.assertEqual(out.shape, (600, 600))
        self.assertEqual(out[0, 0], 100)
        self.assertEqual(out[0, -1], 699)

    def test_3(self) -> None:
        with self.assertRaises(ImageError):
            center_crop(np.zeros((10, 10)), 11, 10)

    def test_4(self) -> None:
        with self.assertRaises(ImageError):
            crop(np.zeros((10, 10)), 5, 5, 6, 2)


class Flip(TestCase):
    def test_1(self) -> None:
        rng = np.random.default_rng(3)
        x = rng.uniform(size=(4, 7, 4))
        self.assertTrue(np.array_equal(flip_horizontal(flip_horizontal(x)), x))
        self.assertTrue(np.array_equal(flip_horizontal(x)[:, 0], x[:, -1]))


class Rotate(TestCase):
    def test_1(self) -> None:
        rng = np.random.default_rng(4)
        x = rng.uniform(size=(5, 8, 4))
        self.assertTrue(np.array_equal(rotate_expand(x, 0), x))
        self.assertTrue(np.array_equal(rotate_expand(x, 360), x))

    def test_2(self) -> None:
        rng = np.random.default_rng(5)
        x = rng.uniform(size=(4, 6))
        out = rotate_expand(x, 90)
        self.assertEqual(out.shape, (6, 4))
        self.assertTrue(np.allclose(out, np.rot90(x), atol=1e-9))

    def test_3(self) -> None:
        out = rotate_expand(np.ones((10, 10, 4)), 45)
        self.assertEqual(out.shape, (15, 15, 4))
        self.assertEqual(out[0, 0].tolist(), [0, 0, 0, 0])
        self.assertTrue(np.allclose(out[7, 7], 1))


class Extents(TestCase):
    def test_1(self) -> None:
        self.assertEqual(short_side_extent(1200, 900, 600), (800, 600))
        self.assertEqual(short_side_extent(900, 1200, 600), (600, 800))
        self.assertEqual(short_side_extent(600, 600, 600), (600, 600))

    def test_2(self) -> None:
        out = cover_resize(np.full((30, 90, 3), 0.5), 64, 64)
        self.assertEqual(out.shape, (64, 64, 3))
        self.assertTrue(np.allclose(out, 0.5))
