"""
Dataset driver

Every random draw comes from a stream keyed by (seed, tag, foreground, variant),
so one sample is rebuilt from its manifest record without touching the others.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import islice
from json import loads
from pathlib import Path
from typing import (
    AbstractSet,
    Iterable,
    Iterator,
    Mapping,
    MutableSequence,
    Sequence,
    Tuple,
    TypeVar,
    Union,
)

import numpy as np
from std2.locale import pathsort_key
from std2.pickle.decoder import new_decoder
from std2.pickle.encoder import new_encoder
from std2.pickle.types import DecodeError
from tqdm import tqdm

from ..consts import MANIFEST, PLANES, SCHEMA
from ..image.png import load_png, quantize, save_quantized
from ..image.types import ImageError, as_rgb, check_rgba
from ..lang import LANG
from ..shared.config import echo_settings, jsonify
from ..shared.logging import log
from ..shared.settings import Settings, SynthConfig
from ..shared.timeit import timeit
from ..shared.types import RgbaImage, RgbImage
from .augment import apply_variant, variant_specs
from .compose import compose_sample
from .types import (
    Manifest,
    MattingSample,
    Origin,
    Provenance,
    Rejected,
    SampleRecord,
    Split,
    SynthError,
    VariantSpec,
)

_T = TypeVar("_T")

_ANGLES = 1
_SAMPLE = 2
_SPLIT = 3
_BACKGROUND = 4


@dataclass(frozen=True)
class _Encoded:
    planes: Mapping[str, np.ndarray]
    provenance: Provenance


_Outcome = Tuple[VariantSpec, Union[_Encoded, Rejected]]


def _stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=key))


def _chunks(it: Iterable[_T], n: int) -> Iterator[Sequence[_T]]:
    src = iter(it)
    while chunk := tuple(islice(src, n)):
        yield chunk


def list_pngs(directory: Path) -> Sequence[Path]:
    if not directory.is_dir():
        raise SynthError(f"not a directory -- {directory}")
    paths = sorted(
        (p for p in directory.iterdir() if p.is_file() and p.suffix.casefold() == ".png"),
        key=pathsort_key,
    )
    if not paths:
        raise SynthError(f"no PNG files in {directory}")
    return paths


def holdout_foregrounds(count: int, fraction: float, seed: int) -> AbstractSet[int]:
    """
    Indices of the foregrounds held out for testing, floor(fraction * count + 0.5) of them
    """

    n = int(np.floor(fraction * count + 0.5))
    order = _stream(seed, _SPLIT).permutation(count)
    return frozenset(int(i) for i in order[:n])


def load_foreground(path: Path) -> RgbaImage:
    try:
        fg = load_png(path)
    except ImageError as e:
        raise SynthError(str(e))
    if fg.ndim != 3 or fg.shape[2] != 4:
        raise SynthError(f"foreground must be RGBA -- {path} {fg.shape}")
    return check_rgba(fg)


def load_background(path: Path) -> RgbImage:
    try:
        return as_rgb(load_png(path))
    except ImageError as e:
        raise SynthError(str(e))


def _encode(sample: MattingSample) -> Mapping[str, np.ndarray]:
    assert sample.trimap is not None
    return {
        "image": quantize(sample.image),
        "alpha": quantize(sample.alpha),
        "mask": quantize(sample.mask),
        "trimap": sample.trimap,
    }


def _origin(
    seed: int, fg: Path, bg: Path, spec: VariantSpec, fg_idx: int, split: Split
) -> Origin:
    return Origin(
        foreground=fg.name,
        background=bg.name,
        variant=spec,
        split=split,
        seed=seed,
        spawn_key=(_SAMPLE, fg_idx, spec.index),
    )


def _synth_foreground(
    seed: int,
    config: SynthConfig,
    fg_idx: int,
    fg_path: Path,
    bgs: Sequence[Path],
    split: Split,
) -> Sequence[_Outcome]:
    fg = load_foreground(fg_path)
    specs = variant_specs(config, rng=_stream(seed, _ANGLES, fg_idx))

    acc: MutableSequence[_Outcome] = []
    for spec in specs:
        pick = _stream(seed, _BACKGROUND, fg_idx, spec.index).integers(len(bgs))
        bg_path = bgs[int(pick)]
        origin = _origin(
            seed, fg=fg_path, bg=bg_path, spec=spec, fg_idx=fg_idx, split=split
        )
        result = compose_sample(
            apply_variant(fg, spec),
            load_background(bg_path),
            rng=_stream(seed, *origin.spawn_key),
            config=config,
            split=split,
            origin=origin,
        )
        if isinstance(result, Rejected):
            acc.append((spec, result))
        else:
            assert result.provenance
            encoded = _Encoded(planes=_encode(result), provenance=result.provenance)
            acc.append((spec, encoded))
    return acc


def _write(out_dir: Path, sample_id: str, planes: Mapping[str, np.ndarray]) -> None:
    for plane in PLANES:
        save_quantized(planes[plane], path=out_dir / plane / f"{sample_id}.png")


def encode_manifest(manifest: Manifest) -> str:
    return jsonify(new_encoder[Manifest](Manifest)(manifest))


def load_manifest(path: Path) -> Manifest:
    try:
        raw = loads(path.read_text("UTF-8"))
        manifest = new_decoder[Manifest](Manifest)(raw)
    except (OSError, ValueError, DecodeError) as e:
        raise SynthError(f"unreadable manifest -- {path} :: {e}")
    if manifest.schema != SCHEMA:
        raise SynthError(f"manifest schema {manifest.schema} != {SCHEMA} -- {path}")
    return manifest


def synthesize_dataset(
    fg_dir: Path, bg_dir: Path, out_dir: Path, settings: Settings, seed: int
) -> Manifest:
    config = settings.synth
    fgs, bgs = list_pngs(fg_dir), list_pngs(bg_dir)
    held = holdout_foregrounds(len(fgs), fraction=config.test_fraction, seed=seed)

    for plane in PLANES:
        (out_dir / plane).mkdir(parents=True, exist_ok=True)

    records: MutableSequence[SampleRecord] = []
    attempted = 0

    def cont(fg_idx: int, fg_path: Path) -> Sequence[_Outcome]:
        split = Split.test if fg_idx in held else Split.train
        return _synth_foreground(
            seed, config=config, fg_idx=fg_idx, fg_path=fg_path, bgs=bgs, split=split
        )

    with timeit("synthesize", fg_dir), ThreadPoolExecutor(
        max_workers=config.workers
    ) as pool, tqdm(total=len(fgs), desc="synth", unit="fg") as bar:
        for chunk in _chunks(enumerate(fgs), n=config.workers):
            for (_, fg_path), outcomes in zip(
                chunk, pool.map(lambda c: cont(*c), chunk)
            ):
                for spec, outcome in outcomes:
                    attempted += 1
                    if isinstance(outcome, Rejected):
                        msg = LANG(
                            "sample rejected",
                            fg=fg_path.name,
                            variant=spec.index,
                            reason=outcome.reason,
                        )
                        log.debug("%s", msg)
                    else:
                        sample_id = f"{len(records):06d}"
                        _write(out_dir, sample_id=sample_id, planes=outcome.planes)
                        records.append(
                            SampleRecord(id=sample_id, provenance=outcome.provenance)
                        )
                bar.update()

    manifest = Manifest(
        schema=SCHEMA,
        seed=seed,
        foregrounds=str(fg_dir),
        backgrounds=str(bg_dir),
        config=config,
        attempted=attempted,
        rejected=attempted - len(records),
        samples=records,
    )
    (out_dir / MANIFEST).write_text(encode_manifest(manifest), encoding="UTF-8")
    echo_settings(settings, seed=seed, out_dir=out_dir)

    msg = LANG(
        "synth summary",
        emitted=len(records),
        out_dir=str(out_dir),
        attempted=attempted,
        rejected=manifest.rejected,
    )
    log.info("%s", msg)
    return manifest


def regenerate_sample(
    record: SampleRecord, fg_dir: Path, bg_dir: Path, config: SynthConfig
) -> MattingSample:
    origin = record.provenance.origin
    fg = load_foreground(fg_dir / origin.foreground)
    bg = load_background(bg_dir / origin.background)
    result = compose_sample(
        apply_variant(fg, origin.variant),
        bg,
        rng=_stream(origin.seed, *origin.spawn_key),
        config=config,
        split=origin.split,
        origin=origin,
    )
    if isinstance(result, Rejected):
        raise SynthError(f"sample {record.id} no longer reproduces -- {result.reason}")
    return result


def split_ids(manifest: Manifest, split: Split) -> Sequence[str]:
    return tuple(
        record.id
        for record in manifest.samples
        if record.provenance.origin.split is split
    )
