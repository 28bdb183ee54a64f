"""
Least squares GAN objectives with a gradient penalty on interpolated mattes
"""

from typing import Optional

import torch
from torch import Tensor

from .types import Critic


def d_loss(D: Critic, alpha: Tensor, alpha_pred: Tensor, image: Tensor, mask: Tensor) -> Tensor:
    real = D(alpha, image, mask)
    fake = D(alpha_pred.detach(), image, mask)
    return torch.mean((real - 1) ** 2) + torch.mean(fake**2)


def g_adv_loss(D: Critic, alpha_pred: Tensor, image: Tensor, mask: Tensor) -> Tensor:
    return lsgan_generator_term(D(alpha_pred, image, mask))


def lsgan_generator_term(fake_logits: Tensor) -> Tensor:
    return torch.mean((fake_logits - 1) ** 2)


def gradient_penalty(
    D: Critic,
    alpha: Tensor,
    alpha_pred: Tensor,
    image: Tensor,
    mask: Tensor,
    lambda_gp: float,
    generator: Optional[torch.Generator] = None,
    t: Optional[Tensor] = None,
) -> Tensor:
    """
    lambda * mean_n (|| d mean(D(a_hat)) / d a_hat ||_2 - 1)^2

    a_hat = t alpha + (1 - t) alpha_pred, t ~ U(0, 1) per sample
    """

    n = alpha.shape[0]
    if t is None:
        device = generator.device if generator is not None else alpha.device
        t = torch.rand((n, 1, 1, 1), generator=generator, dtype=alpha.dtype, device=device)
    t = t.to(device=alpha.device, dtype=alpha.dtype)

    hat = t * alpha + (1 - t) * alpha_pred
    if not hat.requires_grad:
        hat.requires_grad_(True)

    score = D(hat, image, mask).flatten(1).mean(dim=1)
    if score.requires_grad:
        (grad,) = torch.autograd.grad(
            outputs=score.sum(), inputs=hat, create_graph=True, allow_unused=True
        )
    else:
        grad = None
    if grad is None:
        grad = torch.zeros_like(hat)

    norm = grad.flatten(1).norm(2, dim=1)
    return lambda_gp * torch.mean((norm - 1) ** 2)
