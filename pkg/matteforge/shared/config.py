from json import dumps, loads
from math import ceil
from os import environ
from pathlib import Path
from typing import Any, Mapping, Optional

from std2.configparser import hydrate
from std2.graphlib import merge, recur_sort
from std2.pickle.decoder import new_decoder
from std2.pickle.encoder import new_encoder
from yaml import safe_load

from ..consts import CONFIG_ECHO, CONFIG_YML, SEED_VAR
from .settings import Settings
from .types import ConfigError


def _read_user(path: Path) -> Mapping[str, Any]:
    raw = path.read_text("UTF-8")
    conf = hydrate(loads(raw) if path.suffix == ".json" else safe_load(raw))
    if conf is None:
        return {}
    elif not isinstance(conf, Mapping):
        raise ConfigError(f"{path} :: expected a mapping at the top level")
    else:
        return conf


def _validate(settings: Settings) -> None:
    synth, train, loss, gf = (
        settings.synth,
        settings.train,
        settings.loss,
        settings.guided_filter,
    )

    if synth.rotations < 1:
        raise ConfigError("synth.rotations < 1")
    if not 1 <= synth.mask_kernel_min <= synth.mask_kernel_max:
        raise ConfigError("synth.mask_kernel_min/max out of order")
    if not 0 <= synth.rejection_ratio <= 1:
        raise ConfigError("synth.rejection_ratio outside [0, 1]")
    if not synth.crop <= synth.crop_min <= synth.short_side:
        raise ConfigError("synth requires crop <= crop_min <= short_side")
    if not 0 <= synth.hue_range <= 0.5:
        raise ConfigError("synth.hue_range outside [0, 0.5]")
    if synth.trimap_kernel < 1 or synth.trimap_repeats < 1:
        raise ConfigError("synth.trimap_kernel/trimap_repeats < 1")
    if not 0 <= synth.test_fraction < 1:
        raise ConfigError("synth.test_fraction outside [0, 1)")
    if synth.workers < 1:
        raise ConfigError("synth.workers < 1")

    if train.lr <= 0:
        raise ConfigError("train.lr <= 0")
    if train.batch_size < 1:
        raise ConfigError("train.batch_size < 1")
    if not 0 <= ceil(train.warmup_fraction * train.steps) < train.steps:
        raise ConfigError("train requires 0 <= warmup steps < steps")
    if train.checkpoint_every < 1:
        raise ConfigError("train.checkpoint_every < 1")

    if min(loss.g, loss.l, loss.gb, loss.adv, loss.gp, loss.epsilon) < 0:
        raise ConfigError("loss weights must be >= 0")
    if loss.dilation < 1:
        raise ConfigError("loss.dilation < 1")

    if gf.radius < 1 or gf.eps <= 0 or gf.subsample < 1:
        raise ConfigError("guided_filter requires radius >= 1, eps > 0, subsample >= 1")

    if settings.bench.repeats < 1:
        raise ConfigError("bench.repeats < 1, need at least one timed repeat")
    if settings.bench.warmup < 0 or settings.bench.size % 32:
        raise ConfigError("bench requires warmup >= 0 and size divisible by 32")
    if not settings.bench.batch_sizes or min(settings.bench.batch_sizes) < 1:
        raise ConfigError("bench.batch_sizes must be non empty and >= 1")
    if settings.eval.workers < 1:
        raise ConfigError("eval.workers < 1")


def load_settings(
    user: Optional[Path] = None, overrides: Mapping[str, Any] = {}
) -> Settings:
    yml = safe_load(CONFIG_YML.read_text("UTF-8"))
    u_conf = _read_user(user) if user else {}

    merged = merge(merge(yml, u_conf, replace=True), overrides, replace=True)
    settings = new_decoder[Settings](Settings)(merged)
    _validate(settings)
    return settings


def _resolve(settings: Settings) -> int:
    if settings.seed is not None:
        return settings.seed
    elif (env := environ.get(SEED_VAR)) is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"{SEED_VAR}={env} is not an integer")
    else:
        return 0


def resolve_seed(settings: Settings) -> int:
    seed = _resolve(settings)
    if seed < 0:
        raise ConfigError(f"seed must be >= 0 -- {seed}")
    return seed


def jsonify(o: Any) -> str:
    json = dumps(recur_sort(o), check_circular=False, ensure_ascii=False, indent=2)
    return json


def encode_settings(settings: Settings) -> Any:
    return new_encoder[Settings](Settings)(settings)


def decode_settings(encoded: Any) -> Settings:
    return new_decoder[Settings](Settings)(encoded)


def echo_settings(settings: Settings, seed: int, out_dir: Path) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    encoded = {**encode_settings(settings), "seed": seed}
    path = out_dir / CONFIG_ECHO
    path.write_text(jsonify(encoded), encoding="UTF-8")
    return path
