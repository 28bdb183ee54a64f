from dataclasses import replace
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest import TestCase

import numpy as np
from PIL import Image

from ...matteforge.consts import MANIFEST, PLANES
from ...matteforge.datasynth.dataset import (
    holdout_foregrounds,
    list_pngs,
    load_background,
    load_manifest,
    regenerate_sample,
    split_ids,
    synthesize_dataset,
)
from ...matteforge.datasynth.procedural import write_procedural
from ...matteforge.datasynth.types import Split, SynthError
from ...matteforge.image.png import quantize, save_png
from ...matteforge.imgproc.morph import binarize
from ...matteforge.shared.config import load_settings
from ...matteforge.shared.settings import Settings


def _settings(**kwds: object) -> Settings:
    settings = load_settings()
    synth = replace(
        settings.synth,
        short_side=40,
        crop=32,
        crop_min=32,
        mask_kernel_min=3,
        mask_kernel_max=6,
        trimap_kernel=5,
        workers=2,
        **kwds,
    )
    return replace(settings, synth=synth)


def _tree(root: Path) -> dict:
    return {
        str(path.relative_to(root)): path.read_bytes()
        for path in sorted(root.rglob("*"))
        if path.is_file()
    }


class Inputs(TestCase):
    def test_1(self) -> None:
        with TemporaryDirectory() as tmp:
            with self.assertRaises(SynthError):
                list_pngs(Path(tmp))
            with self.assertRaises(SynthError):
                list_pngs(Path(tmp) / "missing")

    def test_2(self) -> None:
        held = holdout_foregrounds(30, fraction=0.2, seed=0)
        self.assertEqual(len(held), 6)
        self.assertTrue(all(0 <= i < 30 for i in held))
        self.assertEqual(held, holdout_foregrounds(30, fraction=0.2, seed=0))
        self.assertEqual(holdout_foregrounds(5, fraction=0.0, seed=0), frozenset())

    def test_3(self) -> None:
        with TemporaryDirectory() as tmp:
            path = Path(tmp) / "gray.png"
            save_png(np.full((4, 5), 0.5), path)
            bg = load_background(path)
            self.assertEqual(bg.shape, (4, 5, 3))


class Synthesize(TestCase):
    def test_1(self) -> None:
        with TemporaryDirectory() as tmp:
            root = Path(tmp)
            write_procedural(root / "fg", root / "bg", count=1, seed=0, size=48)
            manifest = synthesize_dataset(
                root / "fg",
                root / "bg",
                root / "out",
                settings=_settings(reject=False, test_fraction=0.0),
                seed=1,
            )
            self.assertEqual(len(manifest.samples), 22)
            self.assertEqual(manifest.attempted, 22)
            self.assertEqual(manifest.rejected, 0)
            for plane in PLANES:
                self.assertEqual(len(list((root / "out" / plane).iterdir())), 22)
            self.assertTrue((root / "out" / MANIFEST).is_file())

    def test_2(self) -> None:
        with TemporaryDirectory() as tmp:
            root = Path(tmp)
            write_procedural(root / "fg", root / "bg", count=3, seed=2, size=48)
            a = synthesize_dataset(
                root / "fg", root / "bg", root / "a", settings=_settings(), seed=3
            )
            b = synthesize_dataset(
                root / "fg",
                root / "bg",
                root / "b",
                settings=_settings(workers=1),
                seed=3,
            )
            self.assertEqual(a.attempted, b.attempted)
            self.assertEqual(a.samples, b.samples)
            ta, tb = _tree(root / "a"), _tree(root / "b")
            for echo in ("config.json", MANIFEST):
                ta.pop(echo), tb.pop(echo)
            self.assertEqual(ta, tb)

    def test_3(self) -> None:
        with TemporaryDirectory() as tmp:
            root = Path(tmp)
            write_procedural(root / "fg", root / "bg", count=2, seed=4, size=48)
            manifest = synthesize_dataset(
                root / "fg",
                root / "bg",
                root / "out",
                settings=_settings(mask_kernel_min=5, mask_kernel_max=30),
                seed=5,
            )
            self.assertEqual(manifest.attempted, 44)
            self.assertEqual(
                manifest.rejected, manifest.attempted - len(manifest.samples)
            )
            for record in manifest.samples:
                alpha = np.asarray(
                    Image.open(root / "out" / "alpha" / f"{record.id}.png")
                )
                mask = np.asarray(Image.open(root / "out" / "mask" / f"{record.id}.png"))
                self.assertEqual(alpha.shape, (32, 32))
                self.assertTrue(np.isin(mask, (0, 255)).all())
                kept = np.count_nonzero(mask == 255)
                self.assertGreaterEqual(kept, 0.5 * binarize(alpha / 255).sum())

    def test_4(self) -> None:
        with TemporaryDirectory() as tmp:
            root = Path(tmp)
            write_procedural(root / "fg", root / "bg", count=2, seed=6, size=48)
            settings = _settings(test_fraction=0.5)
            synthesize_dataset(
                root / "fg", root / "bg", root / "out", settings=settings, seed=7
            )
            manifest = load_manifest(root / "out" / MANIFEST)
            self.assertEqual(manifest.seed, 7)
            self.assertTrue(split_ids(manifest, Split.train))
            self.assertTrue(split_ids(manifest, Split.test))

            for record in manifest.samples[::5]:
                sample = regenerate_sample(
                    record,
                    fg_dir=root / "fg",
                    bg_dir=root / "bg",
                    config=manifest.config,
                )
                for plane, data in (
                    ("image", quantize(sample.image)),
                    ("alpha", quantize(sample.alpha)),
                    ("mask", quantize(sample.mask)),
                    ("trimap", sample.trimap),
                ):
                    stored = np.asarray(
                        Image.open(root / "out" / plane / f"{record.id}.png")
                    )
                    self.assertTrue(np.array_equal(stored, data), plane)

    def test_5(self) -> None:
        with TemporaryDirectory() as tmp:
            path = Path(tmp) / MANIFEST
            path.write_text('{"schema": 1}')
            with self.assertRaises(SynthError):
                load_manifest(path)

    def test_6(self) -> None:
        with TemporaryDirectory() as tmp:
            root = Path(tmp)
            write_procedural(root / "fg", root / "bg", count=2, seed=8, size=48)
            for out in ("a", "b"):
                synthesize_dataset(
                    root / "fg", root / "bg", root / out, settings=_settings(), seed=9
                )
            self.assertEqual(_tree(root / "a"), _tree(root / "b"))
