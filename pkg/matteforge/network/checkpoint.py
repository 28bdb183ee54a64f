"""
Single file checkpoint container

{
  "manifest": JSON text (schema, step, seed, parameter counts, settings),
  "generator": state dict,
  "discriminator": state dict,
  ...: trainer state (optimizers, rng states)
}
"""

from dataclasses import dataclass
from json import loads
from pathlib import Path
from pickle import UnpicklingError
from typing import Any, Mapping, Tuple

import torch
from std2.pickle.decoder import new_decoder
from std2.pickle.encoder import new_encoder
from std2.pickle.types import DecodeError
from torch import nn

from ..consts import SCHEMA
from ..shared.config import jsonify
from ..shared.settings import Settings
from .discriminator import Discriminator, build_discriminator
from .generator import Generator, build_generator
from .params import count_parameters
from .types import CheckpointError


@dataclass(frozen=True)
class CheckpointManifest:
    schema: int
    step: int
    seed: int
    generator_params: int
    discriminator_params: int
    settings: Settings


@dataclass(frozen=True)
class Checkpoint:
    manifest: CheckpointManifest
    payload: Mapping[str, Any]


def save_checkpoint(
    path: Path,
    step: int,
    seed: int,
    settings: Settings,
    generator: Generator,
    discriminator: Discriminator,
    extra: Mapping[str, Any] = {},
) -> None:
    manifest = CheckpointManifest(
        schema=SCHEMA,
        step=step,
        seed=seed,
        generator_params=count_parameters(generator),
        discriminator_params=count_parameters(discriminator),
        settings=settings,
    )
    encoded = new_encoder[CheckpointManifest](CheckpointManifest)(manifest)
    payload = {
        **extra,
        "manifest": jsonify(encoded),
        "generator": generator.state_dict(),
        "discriminator": discriminator.state_dict(),
    }

    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    torch.save(payload, tmp)
    tmp.replace(path)


def read_checkpoint(path: Path, device: torch.device) -> Checkpoint:
    if not path.is_file():
        raise CheckpointError(f"missing checkpoint -- {path}")
    try:
        payload = torch.load(path, map_location=device, weights_only=True)
    except (RuntimeError, UnpicklingError, EOFError, OSError) as e:
        raise CheckpointError(f"unreadable checkpoint -- {path} :: {e}")

    if not isinstance(payload, Mapping) or "manifest" not in payload:
        raise CheckpointError(f"not a checkpoint container -- {path}")
    try:
        manifest = new_decoder[CheckpointManifest](CheckpointManifest)(
            loads(payload["manifest"])
        )
    except (DecodeError, ValueError) as e:
        raise CheckpointError(f"bad checkpoint manifest -- {path} :: {e}")
    if manifest.schema != SCHEMA:
        raise CheckpointError(
            f"checkpoint schema {manifest.schema} != supported {SCHEMA} -- {path}"
        )
    return Checkpoint(manifest=manifest, payload=payload)


def restore(module: nn.Module, checkpoint: Checkpoint, name: str) -> None:
    state = checkpoint.payload.get(name)
    if state is None:
        raise CheckpointError(f"checkpoint has no {name} state")
    try:
        module.load_state_dict(state, strict=True)
    except RuntimeError as e:
        raise CheckpointError(f"{name} state does not fit the network :: {e}")


def load_networks(
    path: Path, device: torch.device
) -> Tuple[Generator, Discriminator, Checkpoint]:
    checkpoint = read_checkpoint(path, device=device)
    settings = checkpoint.manifest.settings
    generator = build_generator(settings.generator).to(device)
    discriminator = build_discriminator(settings.discriminator).to(device)
    restore(generator, checkpoint=checkpoint, name="generator")
    restore(discriminator, checkpoint=checkpoint, name="discriminator")
    return generator, discriminator, checkpoint


def load_generator(path: Path, device: torch.device) -> Tuple[Generator, Checkpoint]:
    checkpoint = read_checkpoint(path, device=device)
    generator = build_generator(checkpoint.manifest.settings.generator).to(device)
    restore(generator, checkpoint=checkpoint, name="generator")
    generator.eval()
    return generator, checkpoint
