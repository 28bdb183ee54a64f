from argparse import Namespace
from pathlib import Path
from sys import stderr, stdout
from typing import Optional, Sequence, TypeVar

from std2.argparse import ArgparseError
from std2.pickle.types import DecodeError
from yaml import YAMLError

from ..datasynth.dataset import synthesize_dataset
from ..datasynth.procedural import write_procedural
from ..evalmetrics.report import evaluate
from ..gabor.bank import default_bank, dump_bank
from ..lang import LANG
from ..network.checkpoint import load_generator
from ..shared.accel import pick_device
from ..shared.config import echo_settings, load_settings, resolve_seed
from ..shared.logging import log
from ..shared.settings import Settings
from ..shared.types import ConfigError, MatteError
from ..trainer.fit import fit
from .bench import bench, save_table, write_table
from .infer import Job, plan_jobs, run_gf, run_infer
from .parse import overrides, parse_args
from .types import UsageError

_T = TypeVar("_T")


def _need(value: Optional[_T], flag: str) -> _T:
    if value is None:
        raise UsageError(f"{flag} is required (flag or paths.* in --config)")
    return value


def _synth(ns: Namespace, settings: Settings, seed: int) -> str:
    out = _need(ns.out or settings.paths.dataset, flag="--out")
    fg_dir = ns.fg_dir or settings.paths.foregrounds
    bg_dir = ns.bg_dir or settings.paths.backgrounds

    if ns.procedural is not None:
        fg_dir = fg_dir or out / "procedural" / "fg"
        bg_dir = bg_dir or out / "procedural" / "bg"
        write_procedural(
            fg_dir, bg_dir=bg_dir, count=ns.procedural, seed=seed, size=ns.procedural_size
        )

    manifest = synthesize_dataset(
        _need(fg_dir, flag="--fg-dir"),
        bg_dir=_need(bg_dir, flag="--bg-dir"),
        out_dir=out,
        settings=settings,
        seed=seed,
    )
    return f"{len(manifest.samples)} samples in {out}"


def _train(ns: Namespace, settings: Settings, seed: int) -> str:
    final = fit(
        _need(ns.dataset or settings.paths.dataset, flag="--dataset"),
        out_dir=_need(ns.out or settings.paths.output, flag="--out"),
        settings=settings,
        seed=seed,
        resume=ns.resume,
    )
    return str(final)


def _jobs(ns: Namespace) -> Sequence[Job]:
    return plan_jobs(
        ns.image,
        mask=ns.mask,
        out=ns.out,
        image_dir=ns.image_dir,
        mask_dir=ns.mask_dir,
        out_dir=ns.out_dir,
    )


def _echo_dir(ns: Namespace) -> Path:
    return ns.out_dir if ns.out_dir else ns.out.parent


def _infer(ns: Namespace, settings: Settings, seed: int) -> str:
    jobs = _jobs(ns)
    checkpoint = _need(ns.checkpoint or settings.paths.checkpoint, flag="--checkpoint")
    count = run_infer(jobs, checkpoint=checkpoint, device=settings.train.device)
    echo_settings(settings, seed=seed, out_dir=_echo_dir(ns))
    return f"{count} alpha mattes"


def _gf(ns: Namespace, settings: Settings, seed: int) -> str:
    jobs = _jobs(ns)
    count = run_gf(jobs, params=settings.guided_filter)
    echo_settings(settings, seed=seed, out_dir=_echo_dir(ns))
    return f"{count} alpha mattes"


def _eval(ns: Namespace, settings: Settings, seed: int) -> str:
    out = _need(ns.out or settings.paths.output, flag="--out")
    report = evaluate(
        ns.pred_dir,
        gt_dir=ns.gt_dir,
        trimap_dir=ns.trimap_dir,
        out_dir=out,
        settings=settings,
        seed=seed,
    )
    return f"{len(report.samples)} samples in {out}"


def _gabor_dump(ns: Namespace, settings: Settings, seed: int) -> str:
    json = dump_bank(default_bank())
    if ns.out:
        ns.out.parent.mkdir(parents=True, exist_ok=True)
        ns.out.write_text(json, encoding="UTF-8")
        return str(ns.out)
    else:
        print(json, file=stdout, flush=True)
        return "stdout"


def _bench(ns: Namespace, settings: Settings, seed: int) -> str:
    checkpoint = _need(ns.checkpoint or settings.paths.checkpoint, flag="--checkpoint")
    device = pick_device(settings.bench.device)
    generator, _ = load_generator(checkpoint, device=device)
    rows = bench(generator, config=settings.bench, device=device, seed=seed)
    if ns.out:
        save_table(rows, path=ns.out)
        echo_settings(settings, seed=seed, out_dir=ns.out.parent)
        return str(ns.out)
    else:
        write_table(rows, fd=stdout)
        return "stdout"


_COMMANDS = {
    "synth": _synth,
    "train": _train,
    "infer": _infer,
    "gf": _gf,
    "eval": _eval,
    "gabor-dump": _gabor_dump,
    "bench": _bench,
}


def main(argv: Sequence[str]) -> int:
    """
    0 success, 1 usage or configuration error, 2 runtime failure
    """

    try:
        ns = parse_args(argv)
    except ArgparseError as e:
        print(LANG("usage error", error=str(e)), file=stderr, flush=True)
        return 1

    try:
        settings = load_settings(ns.config, overrides=overrides(ns))
        seed = resolve_seed(settings)
    except (ConfigError, DecodeError, YAMLError, OSError, ValueError) as e:
        print(LANG("config error", error=str(e)), file=stderr, flush=True)
        return 1

    command = _COMMANDS[ns.command]
    try:
        detail = command(ns, settings=settings, seed=seed)
    except (ConfigError, UsageError) as e:
        print(LANG("usage error", error=str(e)), file=stderr, flush=True)
        return 1
    except (MatteError, OSError, RuntimeError, MemoryError) as e:
        log.error("%s", LANG("runtime failure", command=ns.command, error=str(e)))
        return 2
    else:
        log.info("%s", LANG("done", command=ns.command, detail=detail))
        return 0
