from concurrent.futures import ThreadPoolExecutor
from csv import writer
from pathlib import Path
from statistics import fmean
from typing import AbstractSet, Mapping, Sequence

from std2.pickle.encoder import new_encoder
from tqdm import tqdm

from ..consts import METRICS_CSV, METRICS_SUMMARY
from ..image.png import load_png, load_trimap
from ..image.types import ImageError
from ..lang import LANG
from ..shared.config import echo_settings, jsonify
from ..shared.logging import log
from ..shared.settings import Settings
from ..shared.timeit import timeit
from .metrics import DISPLAY, evaluate_sample
from .types import Aggregate, MetricError, MetricReport, SampleMetrics, Summary

_COLUMNS = ("id", "mse", "sad", "grad", "conn")


def _stems(directory: Path) -> Mapping[str, Path]:
    if not directory.is_dir():
        raise MetricError(f"not a directory -- {directory}")
    return {
        path.stem: path
        for path in directory.iterdir()
        if path.is_file() and path.suffix.casefold() == ".png"
    }


def _matched(*dirs: Path) -> Sequence[Mapping[str, Path]]:
    listings = tuple(_stems(d) for d in dirs)
    keys: Sequence[AbstractSet[str]] = tuple(listing.keys() for listing in listings)
    union = frozenset().union(*keys)
    for directory, present in zip(dirs, keys):
        if missing := union - present:
            raise MetricError(f"{directory} lacks {', '.join(sorted(missing))}")
    if not union:
        raise MetricError(f"no PNG files in {', '.join(map(str, dirs))}")
    return listings


def _one(sample_id: str, pred: Path, gt: Path, trimap: Path) -> SampleMetrics:
    try:
        alpha_pred, alpha = load_png(pred), load_png(gt)
        tri = load_trimap(trimap)
    except ImageError as e:
        raise MetricError(f"{sample_id} :: {e}")
    return evaluate_sample(sample_id, alpha_pred=alpha_pred, alpha=alpha, trimap=tri)


def aggregate(samples: Sequence[SampleMetrics]) -> Aggregate:
    if not samples:
        raise MetricError("nothing to aggregate")
    grad = fmean(s.grad for s in samples)
    conn = fmean(s.conn for s in samples)
    return Aggregate(
        mse=fmean(s.mse for s in samples),
        sad=fmean(s.sad for s in samples),
        grad=grad,
        conn=conn,
        grad_display=grad * DISPLAY,
        conn_display=conn * DISPLAY,
    )


def _write_csv(path: Path, samples: Sequence[SampleMetrics]) -> None:
    with path.open("w", encoding="UTF-8", newline="") as fd:
        csv = writer(fd)
        csv.writerow(_COLUMNS)
        for s in samples:
            csv.writerow(
                (s.id, repr(s.mse), repr(s.sad), repr(s.grad * DISPLAY), repr(s.conn * DISPLAY))
            )


def evaluate(
    pred_dir: Path,
    gt_dir: Path,
    trimap_dir: Path,
    out_dir: Path,
    settings: Settings,
    seed: int,
) -> MetricReport:
    preds, gts, trimaps = _matched(pred_dir, gt_dir, trimap_dir)
    ids = sorted(preds)

    with timeit("evaluate", pred_dir), ThreadPoolExecutor(
        max_workers=settings.eval.workers
    ) as pool:
        futs = pool.map(
            lambda sid: _one(sid, pred=preds[sid], gt=gts[sid], trimap=trimaps[sid]),
            ids,
        )
        samples = tuple(tqdm(futs, total=len(ids), desc="eval", unit="sample"))

    report = MetricReport(samples=samples, mean=aggregate(samples))

    out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(out_dir / METRICS_CSV, samples=samples)
    summary = Summary(count=len(ids), ids=ids, mean=report.mean, settings=settings)
    (out_dir / METRICS_SUMMARY).write_text(
        jsonify(new_encoder[Summary](Summary)(summary)), encoding="UTF-8"
    )
    echo_settings(settings, seed=seed, out_dir=out_dir)

    mean = report.mean
    msg = LANG(
        "eval summary",
        count=len(ids),
        mse=f"{mean.mse:.5f}",
        sad=f"{mean.sad:.3f}",
        grad=f"{mean.grad_display:.3f}",
        conn=f"{mean.conn_display:.3f}",
    )
    log.info("%s", msg)
    return report
