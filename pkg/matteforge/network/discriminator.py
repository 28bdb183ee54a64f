"""
Conditional PatchGAN over (image, mask, alpha)

512 x 512 input, 4 stride 2 stages -> 32 x 32, final 4 x 4 stride 1 conv with
padding 1 -> 31 x 31 logits
"""

import torch
from torch import Tensor, nn

from ..shared.settings import DiscriminatorConfig
from .spectral import apply_spectral_norm
from .types import NetworkError


class Discriminator(nn.Module):
    def __init__(self, config: DiscriminatorConfig) -> None:
        super().__init__()
        if not config.channels:
            raise NetworkError("discriminator needs at least one stage")
        if config.kernel_size < 2:
            raise NetworkError(f"kernel size must be >= 2 -- {config.kernel_size}")
        self.config = config

        k = config.kernel_size
        layers = []
        c_in = config.in_channels
        for idx, c_out in enumerate(config.channels):
            conv = nn.Conv2d(c_in, c_out, kernel_size=k, stride=2, padding=1, bias=True)
            layers.append(apply_spectral_norm(conv, n_iterations=config.power_iterations))
            if idx >= config.batch_norm_from:
                layers.append(nn.BatchNorm2d(c_out))
            layers.append(nn.LeakyReLU(config.negative_slope))
            c_in = c_out

        final = nn.Conv2d(c_in, 1, kernel_size=k, stride=1, padding=1, bias=True)
        layers.append(apply_spectral_norm(final, n_iterations=config.power_iterations))
        self.body = nn.Sequential(*layers)

    def forward(self, alpha: Tensor, image: Tensor, mask: Tensor) -> Tensor:
        channels = image.shape[1] + mask.shape[1] + alpha.shape[1]
        if channels != self.config.in_channels:
            raise NetworkError(
                f"expected {self.config.in_channels} input channels, got {channels}"
            )
        return self.body(torch.cat((image, mask, alpha), dim=1))


def build_discriminator(config: DiscriminatorConfig) -> Discriminator:
    return Discriminator(config)
