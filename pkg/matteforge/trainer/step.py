from math import isfinite
from typing import Tuple

import torch
from torch import Tensor, nn
from torch.optim import Adam

from ..gabor.types import GaborBank
from ..network.discriminator import build_discriminator
from ..network.generator import build_generator
from ..objectives.adversarial import d_loss, gradient_penalty
from ..objectives.full import full_generator_loss
from ..objectives.types import LossTerms
from ..shared.settings import LossWeights, Settings
from .schedule import lr_schedule
from .types import Batch, StepRecord, TrainError, TrainState


def build_state(settings: Settings, seed: int, device: torch.device) -> TrainState:
    torch.manual_seed(seed)
    generator = build_generator(settings.generator).to(device)
    discriminator = build_discriminator(settings.discriminator).to(device)
    betas = (settings.train.beta1, settings.train.beta2)
    gp_rng = torch.Generator(device=device)
    gp_rng.manual_seed(seed)
    return TrainState(
        generator=generator,
        discriminator=discriminator,
        opt_g=Adam(generator.parameters(), lr=settings.train.lr, betas=betas),
        opt_d=Adam(discriminator.parameters(), lr=settings.train.lr, betas=betas),
        gp_rng=gp_rng,
    )


def _set_lr(state: TrainState, lr: float) -> None:
    for opt in (state.opt_g, state.opt_d):
        for group in opt.param_groups:
            group["lr"] = lr


def _trainable(module: nn.Module, on: bool) -> None:
    for param in module.parameters():
        param.requires_grad_(on)


def _finite(step: int, **values: Tensor) -> None:
    bad = {k: float(v) for k, v in values.items() if not isfinite(float(v))}
    if bad:
        raise TrainError(f"non finite loss at step {step} -- {bad}")


def discriminator_update(
    state: TrainState, batch: Batch, alpha_pred: Tensor, weights: LossWeights, step: int
) -> Tuple[Tensor, Tensor]:
    D = state.discriminator
    _trainable(D, on=True)
    state.opt_d.zero_grad(set_to_none=True)

    fake = alpha_pred.detach()
    L_D = d_loss(D, batch.alpha, fake, image=batch.image, mask=batch.mask)
    GP = gradient_penalty(
        D,
        batch.alpha,
        fake,
        image=batch.image,
        mask=batch.mask,
        lambda_gp=weights.gp,
        generator=state.gp_rng,
    )
    _finite(step, L_D=L_D, GP=GP)
    (L_D + GP).backward()
    state.opt_d.step()
    return L_D.detach(), GP.detach()


def generator_update(
    state: TrainState,
    batch: Batch,
    alpha_pred: Tensor,
    bank: GaborBank,
    weights: LossWeights,
    step: int,
) -> Tuple[Tensor, LossTerms]:
    D = state.discriminator
    _trainable(D, on=False)
    try:
        state.opt_g.zero_grad(set_to_none=True)
        fake_logits = D(alpha_pred, batch.image, batch.mask)
        total, terms = full_generator_loss(
            batch.alpha,
            alpha_pred,
            mask=batch.mask,
            fake_logits=fake_logits,
            bank=bank,
            weights=weights,
        )
        _finite(step, L_total=total)
        total.backward()
        state.opt_g.step()
    finally:
        _trainable(D, on=True)
    return total.detach(), terms


def train_step(
    state: TrainState, batch: Batch, settings: Settings, bank: GaborBank, step: int
) -> StepRecord:
    """
    Step `step` (0 based) trains at lr_schedule(step + 1)

    G forward -> D on (L_D + GP), prediction detached -> G on the full loss, D frozen
    """

    lr = lr_schedule(step + 1, config=settings.train)
    _set_lr(state, lr=lr)
    state.generator.train()
    state.discriminator.train()

    alpha_pred = state.generator.predict(batch.image, batch.mask)
    L_D, GP = discriminator_update(
        state, batch=batch, alpha_pred=alpha_pred, weights=settings.loss, step=step
    )
    _, terms = generator_update(
        state,
        batch=batch,
        alpha_pred=alpha_pred,
        bank=bank,
        weights=settings.loss,
        step=step,
    )
    return StepRecord(
        step=step + 1,
        L_g=float(terms.g),
        L_l=float(terms.l),
        L_gb=float(terms.gb),
        L_G=float(terms.adv),
        L_D=float(L_D),
        GP=float(GP),
        lr=lr,
    )
