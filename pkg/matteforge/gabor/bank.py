from math import pi
from typing import Any, Mapping, Sequence

import numpy as np
from numpy.typing import NDArray

from ..imgproc.conv import Padding, conv2d_same
from ..shared.config import jsonify
from ..shared.types import GrayMap
from .types import GaborBank, GaborError, GaborParams

_ORIENTATIONS = 16
_WAVELENGTH = 5.0
_SIGMA = 0.5
_ASPECT = 0.5
_PHASE = 0.0
_SIZE = 7


def gabor_kernel(params: GaborParams) -> NDArray[np.float64]:
    """
    exp(-(x'^2 + g^2 y'^2) / 2s^2) * cos(2 pi x' / l + psi)

    x runs along columns, y along rows, origin at the centre tap
    """

    if not params.size % 2:
        raise GaborError(f"kernel size must be odd -- {params.size}")
    if params.wavelength <= 0 or params.sigma <= 0 or params.aspect <= 0:
        raise GaborError(f"wavelength, sigma, aspect must be > 0 -- {params}")

    half = params.size // 2
    y, x = np.mgrid[-half : half + 1, -half : half + 1].astype(np.float64)
    cos, sin = np.cos(params.orientation), np.sin(params.orientation)
    xr = x * cos + y * sin
    yr = -x * sin + y * cos

    envelope = np.exp(-(xr**2 + params.aspect**2 * yr**2) / (2 * params.sigma**2))
    carrier = np.cos(2 * pi * xr / params.wavelength + params.phase)
    return envelope * carrier


def default_bank() -> GaborBank:
    params = tuple(
        GaborParams(
            wavelength=_WAVELENGTH,
            orientation=k * pi / _ORIENTATIONS,
            phase=_PHASE,
            sigma=_SIGMA,
            aspect=_ASPECT,
            size=_SIZE,
        )
        for k in range(_ORIENTATIONS)
    )
    return GaborBank(params=params, kernels=tuple(map(gabor_kernel, params)))


def gabor_responses(plane: GrayMap, bank: GaborBank) -> NDArray[np.float64]:
    """
    -> (len(bank), H, W), zero padded, bank order
    """

    size = max(k.shape[0] for k in bank.kernels)
    h, w = plane.shape
    if h < size or w < size:
        raise GaborError(f"map {h}x{w} smaller than the {size}x{size} kernels")

    return np.stack(
        [conv2d_same(plane, kernel, padding=Padding.zero) for kernel in bank.kernels]
    )


def dump_bank(bank: GaborBank) -> str:
    records: Sequence[Mapping[str, Any]] = [
        {"orientation": p.orientation, "taps": k.tolist()}
        for p, k in zip(bank.params, bank.kernels)
    ]
    return jsonify(records)
