"""
Local throughput table, generator forward passes on synthetic batches
"""

from csv import writer
from dataclasses import dataclass
from pathlib import Path
from statistics import pstdev
from typing import MutableSequence, Optional, Sequence, TextIO, Tuple

import torch

from ..lang import LANG
from ..network.generator import Generator
from ..shared.logging import log
from ..shared.settings import BenchConfig
from ..shared.timeit import timeit
from ..shared.types import ConfigError

_COLUMNS = ("batch_size", "repeats", "elapsed_s", "fps", "fps_std")
_OOM = "OOM"


@dataclass(frozen=True)
class BenchRow:
    batch_size: int
    repeats: int
    elapsed: Optional[float]
    fps: Optional[float]
    fps_std: Optional[float]


_OOM_TEXT = ("out of memory", "can't allocate memory")


def _is_oom(e: Exception) -> bool:
    """
    CUDA raises OutOfMemoryError, the CPU allocator a RuntimeError naming the failed allocation
    """

    if isinstance(e, (MemoryError, torch.cuda.OutOfMemoryError)):
        return True
    msg = str(e).casefold()
    return any(text in msg for text in _OOM_TEXT)


def _sync(device: torch.device) -> None:
    if device.type == "cuda":
        torch.cuda.synchronize(device)


def _inputs(
    batch_size: int, size: int, channels: int, device: torch.device, seed: int
) -> Tuple[torch.Tensor, torch.Tensor]:
    rng = torch.Generator(device="cpu")
    rng.manual_seed(seed)
    image = torch.rand((batch_size, channels, size, size), generator=rng)
    mask = (torch.rand((batch_size, 1, size, size), generator=rng) > 0.5).float()
    return image.to(device), mask.to(device)


def _row(
    generator: Generator,
    batch_size: int,
    config: BenchConfig,
    device: torch.device,
    seed: int,
) -> BenchRow:
    image, mask = _inputs(
        batch_size,
        size=config.size,
        channels=generator.image_channels,
        device=device,
        seed=seed,
    )
    with torch.no_grad():
        for _ in range(config.warmup):
            generator.predict(image, mask)
        _sync(device)

        laps: MutableSequence[float] = []
        for _ in range(config.repeats):
            with timeit("bench", batch_size) as elapsed:
                generator.predict(image, mask)
                _sync(device)
            laps.append(elapsed())

    total = sum(laps)
    return BenchRow(
        batch_size=batch_size,
        repeats=config.repeats,
        elapsed=total,
        fps=batch_size * config.repeats / total,
        fps_std=pstdev(batch_size / lap for lap in laps),
    )


def bench(
    generator: Generator, config: BenchConfig, device: torch.device, seed: int
) -> Sequence[BenchRow]:
    """
    An out of memory batch size yields an OOM row, the remaining sizes still run
    """

    if config.repeats < 1:
        raise ConfigError(f"bench needs at least one timed repeat -- {config.repeats}")

    log.info("%s", LANG("bench disclaimer"))
    generator.eval()

    rows: MutableSequence[BenchRow] = []
    for batch_size in config.batch_sizes:
        try:
            row = _row(
                generator, batch_size=batch_size, config=config, device=device, seed=seed
            )
        except (RuntimeError, MemoryError) as e:
            if not _is_oom(e):
                raise
            log.warning("%s", LANG("bench oom", batch_size=batch_size))
            if device.type == "cuda":
                torch.cuda.empty_cache()
            row = BenchRow(
                batch_size=batch_size,
                repeats=config.repeats,
                elapsed=None,
                fps=None,
                fps_std=None,
            )
        rows.append(row)
    return rows


def _cell(value: Optional[float]) -> str:
    return _OOM if value is None else repr(value)


def write_table(rows: Sequence[BenchRow], fd: TextIO) -> None:
    csv = writer(fd)
    csv.writerow(_COLUMNS)
    for row in rows:
        csv.writerow(
            (
                row.batch_size,
                row.repeats,
                _cell(row.elapsed),
                _cell(row.fps),
                _cell(row.fps_std),
            )
        )


def save_table(rows: Sequence[BenchRow], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="UTF-8", newline="") as fd:
        write_table(rows, fd=fd)
