"""
Hourglass generator predicting guided filter coefficients

alpha = clamp(sum_c A_c * I_c + B, 0, 1)
"""

from typing import Sequence, Tuple

import torch
import torch.nn.functional as F
from torch import Tensor, nn

from ..shared.settings import GeneratorConfig
from .types import CoefficientMaps, NetworkError


def _depthwise(channels: int, stride: int) -> nn.Conv2d:
    return nn.Conv2d(
        channels,
        channels,
        kernel_size=3,
        stride=stride,
        padding=1,
        groups=channels,
        bias=True,
    )


def _conv_bn(c_in: int, c_out: int, stride: int) -> nn.Sequential:
    return nn.Sequential(
        nn.Conv2d(c_in, c_out, kernel_size=3, stride=stride, padding=1, bias=False),
        nn.BatchNorm2d(c_out),
        nn.ReLU(),
    )


def _upsample(x: Tensor, size: Tuple[int, int]) -> Tensor:
    return F.interpolate(x, size=size, mode="bilinear", align_corners=False)


class _Residual(nn.Module):
    def __init__(self, channels: int) -> None:
        super().__init__()
        self.body = nn.Sequential(
            nn.Conv2d(channels, channels, kernel_size=3, padding=1, bias=False),
            nn.BatchNorm2d(channels),
            nn.ReLU(),
            nn.Conv2d(channels, channels, kernel_size=3, padding=1, bias=False),
            nn.BatchNorm2d(channels),
        )

    def forward(self, x: Tensor) -> Tensor:
        return F.relu(x + self.body(x))


class _DecoderStage(nn.Module):
    def __init__(self, c_in: int, c_skip: int, c_out: int) -> None:
        super().__init__()
        self.shortcut = _depthwise(c_skip, stride=1)
        self.fuse = _conv_bn(c_in + c_skip, c_out, stride=1)

    def forward(self, x: Tensor, skip: Tensor) -> Tensor:
        up = _upsample(x, size=skip.shape[-2:])
        return self.fuse(torch.cat((up, self.shortcut(skip)), dim=1))


class _Attention(nn.Module):
    """
    Input side features + upsampled bottleneck -> [0, 1] map
    """

    def __init__(self, c_low: int, c_bottleneck: int) -> None:
        super().__init__()
        self.conv = nn.Conv2d(c_low + c_bottleneck, 1, kernel_size=3, padding=1)

    def forward(self, low: Tensor, bottleneck: Tensor) -> Tensor:
        up = _upsample(bottleneck, size=low.shape[-2:])
        return torch.sigmoid(self.conv(torch.cat((low, up), dim=1)))


def linear_transform(A: Tensor, B: Tensor, image: Tensor) -> Tensor:
    return torch.clamp((A * image).sum(dim=1, keepdim=True) + B, 0, 1)


def _validate(config: GeneratorConfig) -> None:
    enc, dec = tuple(config.encoder_channels), tuple(config.decoder_channels)
    if config.in_channels < 2:
        raise NetworkError("generator needs image channels plus one mask channel")
    if not 0 < len(dec) < len(enc):
        raise NetworkError(f"need 0 < decoder stages < encoder stages -- {dec}, {enc}")
    if not 0 <= config.depthwise_stages <= len(enc) - len(dec):
        raise NetworkError(f"depthwise stages must sit above the decoder -- {config}")
    for c_in, c_out in zip((config.in_channels, *enc), enc[: config.depthwise_stages]):
        if c_in != c_out:
            raise NetworkError(f"depthwise stage must preserve channels -- {c_in} -> {c_out}")
    if config.head_upsample != 2 ** (len(enc) - len(dec)):
        raise NetworkError(
            f"head upsample {config.head_upsample} does not return to input resolution"
        )


class Generator(nn.Module):
    def __init__(self, config: GeneratorConfig) -> None:
        super().__init__()
        _validate(config)
        self.config = config
        self.image_channels = config.in_channels - 1

        enc = tuple(config.encoder_channels)
        dec = tuple(config.decoder_channels)

        stages = []
        c_in = config.in_channels
        for idx, c_out in enumerate(enc):
            if idx < config.depthwise_stages:
                stages.append(nn.Sequential(_depthwise(c_in, stride=2), nn.ReLU()))
            else:
                stages.append(_conv_bn(c_in, c_out, stride=2))
            c_in = c_out
        self.encoder = nn.ModuleList(stages)

        self.bottleneck = nn.Sequential(
            *(_Residual(enc[-1]) for _ in range(config.bottleneck_blocks))
        )

        skips = enc[-2 : -2 - len(dec) : -1]
        decoder = []
        c_in = enc[-1]
        for c_skip, c_out in zip(skips, dec):
            decoder.append(_DecoderStage(c_in, c_skip=c_skip, c_out=c_out))
            c_in = c_out
        self.decoder = nn.ModuleList(decoder)

        self._low = len(enc) - 1 - len(dec)
        self.attention = _Attention(enc[self._low], c_bottleneck=enc[-1])

        self.head_a = nn.Conv2d(dec[-1], self.image_channels, kernel_size=3, padding=1)
        self.head_b = nn.Conv2d(dec[-1], 1, kernel_size=3, padding=1)

    @property
    def divisor(self) -> int:
        return 2 ** len(self.config.encoder_channels)

    def _check(self, image: Tensor, mask: Tensor) -> None:
        if image.ndim != 4 or mask.ndim != 4:
            raise NetworkError(f"expected NCHW -- {tuple(image.shape)}, {tuple(mask.shape)}")
        if image.shape[1] != self.image_channels or mask.shape[1] != 1:
            raise NetworkError(
                f"expected {self.image_channels} image + 1 mask channels -- "
                f"{image.shape[1]} + {mask.shape[1]}"
            )
        if image.shape[-2:] != mask.shape[-2:] or image.shape[0] != mask.shape[0]:
            raise NetworkError(f"image / mask mismatch -- {tuple(image.shape)}, {tuple(mask.shape)}")
        h, w = image.shape[-2:]
        if h % self.divisor or w % self.divisor:
            raise NetworkError(f"input extents {h}x{w} not divisible by {self.divisor}")

    def coefficients(self, image: Tensor, mask: Tensor) -> CoefficientMaps:
        """
        Head outputs before upsampling
        """

        self._check(image, mask)
        x = torch.cat((image, mask), dim=1)

        features = []
        for stage in self.encoder:
            x = stage(x)
            features.append(x)

        bottleneck = self.bottleneck(features[-1])
        x = bottleneck
        skips: Sequence[Tensor] = features[-2 : -2 - len(self.decoder) : -1]
        for stage, skip in zip(self.decoder, skips):
            x = stage(x, skip)

        x = x * self.attention(features[self._low], bottleneck)
        return CoefficientMaps(A=self.head_a(x), B=self.head_b(x))

    def finish(self, coeffs: CoefficientMaps, image: Tensor) -> Tuple[Tensor, Tensor, Tensor]:
        size = image.shape[-2:]
        A = _upsample(coeffs.A, size=size)
        B = _upsample(coeffs.B, size=size)
        return A, B, linear_transform(A, B, image)

    def forward(self, image: Tensor, mask: Tensor) -> Tuple[Tensor, Tensor, Tensor]:
        return self.finish(self.coefficients(image, mask), image=image)

    def predict(self, image: Tensor, mask: Tensor) -> Tensor:
        _, _, alpha = self(image, mask)
        return alpha


def build_generator(config: GeneratorConfig) -> Generator:
    return Generator(config)
