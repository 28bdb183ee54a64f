from dataclasses import replace
from json import dumps
from pathlib import Path
from typing import MutableSet, Optional

import torch
from std2.pickle.encoder import new_encoder
from tqdm import tqdm

from ..consts import CHECKPOINT_DIR, FINAL_CHECKPOINT, MANIFEST, TRAIN_LOG
from ..datasynth.dataset import load_manifest, split_ids
from ..datasynth.types import Split, SynthError
from ..gabor.bank import default_bank
from ..lang import LANG
from ..network.checkpoint import read_checkpoint, restore, save_checkpoint
from ..network.params import count_parameters
from ..shared.accel import pick_device
from ..shared.config import echo_settings
from ..shared.logging import log
from ..shared.settings import Settings
from ..shared.timeit import timeit
from .data import make_loader
from .step import build_state, train_step
from .types import Batch, StepRecord, TrainError, TrainState

_ENCODE = new_encoder[StepRecord](StepRecord)


def checkpoint_path(out_dir: Path, step: int) -> Path:
    return out_dir / CHECKPOINT_DIR / f"step_{step:07d}.pt"


def _to(batch: Batch, device: torch.device) -> Batch:
    return replace(
        batch,
        image=batch.image.to(device),
        alpha=batch.alpha.to(device),
        mask=batch.mask.to(device),
    )


def _save(
    path: Path, step: int, seed: int, settings: Settings, state: TrainState
) -> None:
    save_checkpoint(
        path,
        step=step,
        seed=seed,
        settings=settings,
        generator=state.generator,
        discriminator=state.discriminator,
        extra={
            "opt_g": state.opt_g.state_dict(),
            "opt_d": state.opt_d.state_dict(),
            "gp_rng": state.gp_rng.get_state(),
        },
    )
    log.info("%s", LANG("checkpoint written", path=str(path), step=step))


def _resume(path: Path, state: TrainState, device: torch.device) -> int:
    checkpoint = read_checkpoint(path, device=device)
    restore(state.generator, checkpoint=checkpoint, name="generator")
    restore(state.discriminator, checkpoint=checkpoint, name="discriminator")
    try:
        state.opt_g.load_state_dict(checkpoint.payload["opt_g"])
        state.opt_d.load_state_dict(checkpoint.payload["opt_d"])
        state.gp_rng.set_state(checkpoint.payload["gp_rng"].cpu())
    except (KeyError, ValueError, RuntimeError) as e:
        raise TrainError(f"checkpoint lacks trainer state -- {path} :: {e}")
    step = checkpoint.manifest.step
    log.info("%s", LANG("training resumed", checkpoint=str(path), step=step))
    return step


def _truncate_log(path: Path, lines: int) -> None:
    kept = path.read_text("UTF-8").splitlines()[:lines] if path.exists() else []
    if len(kept) < lines:
        raise TrainError(f"{path} holds {len(kept)} records, resume needs {lines}")
    path.write_text("".join(f"{line}\n" for line in kept), encoding="UTF-8")


def fit(
    dataset: Path,
    out_dir: Path,
    settings: Settings,
    seed: int,
    resume: Optional[Path] = None,
) -> Path:
    """
    Train on the train split of a synthesized dataset, -> final checkpoint path
    """

    config = settings.train
    try:
        manifest = load_manifest(dataset / MANIFEST)
    except SynthError as e:
        raise TrainError(str(e))
    ids = split_ids(manifest, split=Split.train)
    if not ids:
        raise TrainError(f"no training samples in {dataset}")

    torch.use_deterministic_algorithms(True, warn_only=True)
    device = pick_device(config.device)
    state = build_state(settings, seed=seed, device=device)
    bank = default_bank()

    msg = LANG(
        "parameter budget",
        generator=count_parameters(state.generator),
        discriminator=count_parameters(state.discriminator),
    )
    log.info("%s", msg)

    out_dir.mkdir(parents=True, exist_ok=True)
    echo_settings(settings, seed=seed, out_dir=out_dir)
    log_path = out_dir / TRAIN_LOG

    start = _resume(resume, state=state, device=device) if resume else 0
    if start > config.steps:
        raise TrainError(f"checkpoint step {start} beyond {config.steps} steps")
    _truncate_log(log_path, lines=start)

    skipped: MutableSet[str] = set()
    limit = config.max_skip_fraction * len(ids)
    loader = make_loader(dataset, ids=ids, config=config, seed=seed, start=start)

    with timeit("fit", dataset), log_path.open("a", encoding="UTF-8") as fd, tqdm(
        total=config.steps, initial=start, desc="train", unit="step"
    ) as bar:
        for step, batch in enumerate(loader, start=start):
            for sample_id, reason in batch.skipped:
                if sample_id not in skipped:
                    skipped.add(sample_id)
                    log.warning("%s", LANG("sample skipped", id=sample_id, error=reason))
            if len(skipped) > limit:
                msg = LANG(
                    "too many skipped",
                    skipped=len(skipped),
                    attempted=len(ids),
                    limit=config.max_skip_fraction,
                )
                raise TrainError(msg)

            record = train_step(
                state, batch=_to(batch, device), settings=settings, bank=bank, step=step
            )
            line = dumps(_ENCODE(record), check_circular=False, ensure_ascii=False)
            fd.write(f"{line}\n")
            fd.flush()
            bar.update()

            if record.step % config.checkpoint_every == 0:
                _save(
                    checkpoint_path(out_dir, step=record.step),
                    step=record.step,
                    seed=seed,
                    settings=settings,
                    state=state,
                )

    final = out_dir / FINAL_CHECKPOINT
    _save(final, step=config.steps, seed=seed, settings=settings, state=state)
    return final
