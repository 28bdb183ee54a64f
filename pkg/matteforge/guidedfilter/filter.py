"""
Guided filter, grey and colour guidance, exact and subsampled

Everything goes through `_filter`; at subsample 1 no resampling happens, so
the fast path and the exact path are the same computation.
"""

from math import ceil
from typing import Tuple

import numpy as np
from numpy.typing import NDArray

from ..imgproc.conv import box_filter
from ..imgproc.geometry import resize_bilinear
from ..shared.settings import GuidedFilterParams
from ..shared.types import GrayMap
from .types import FilterError

_Coeffs = Tuple[NDArray[np.float64], NDArray[np.float64]]


def _gray_coefficients(I: GrayMap, p: GrayMap, r: int, eps: float) -> _Coeffs:
    mean_I = box_filter(I, radius=r)
    mean_p = box_filter(p, radius=r)
    cov_Ip = box_filter(I * p, radius=r) - mean_I * mean_p
    var_I = box_filter(I * I, radius=r) - mean_I * mean_I

    a = cov_Ip / (var_I + eps)
    b = mean_p - a * mean_I
    return a, b


def _color_coefficients(
    I: NDArray[np.float64], p: GrayMap, r: int, eps: float
) -> _Coeffs:
    mean_I = box_filter(I, radius=r)
    mean_p = box_filter(p, radius=r)
    cov_Ip = box_filter(I * p[..., None], radius=r) - mean_I * mean_p[..., None]

    outer = I[..., :, None] * I[..., None, :]
    h, w, c = I.shape
    sigma = box_filter(outer.reshape(h, w, c * c), radius=r).reshape(h, w, c, c)
    sigma -= mean_I[..., :, None] * mean_I[..., None, :]
    sigma += eps * np.eye(c)

    a = np.linalg.solve(sigma, cov_Ip[..., None])[..., 0]
    b = mean_p - np.sum(a * mean_I, axis=-1)
    return a, b


def _coefficients(I: NDArray[np.float64], p: GrayMap, r: int, eps: float) -> _Coeffs:
    if I.ndim == 2:
        return _gray_coefficients(I, p, r=r, eps=eps)
    else:
        return _color_coefficients(I, p, r=r, eps=eps)


def _apply(a: NDArray[np.float64], b: NDArray[np.float64], I: NDArray[np.float64]) -> GrayMap:
    out = a * I + b if I.ndim == 2 else np.sum(a * I, axis=-1) + b
    return np.clip(out, 0, 1)


def _check(I: NDArray[np.float64], p: GrayMap, params: GuidedFilterParams) -> None:
    if p.ndim != 2:
        raise FilterError(f"filter input must be (H, W) -- {p.shape}")
    if I.ndim not in {2, 3}:
        raise FilterError(f"guidance must be (H, W) or (H, W, C) -- {I.shape}")
    if I.shape[:2] != p.shape:
        raise FilterError(f"extent mismatch -- {I.shape[:2]} != {p.shape}")
    if params.radius < 1 or params.eps <= 0 or params.subsample < 1:
        raise FilterError(f"invalid parameters -- {params}")


def _filter(
    I: NDArray[np.float64], p: GrayMap, r: int, eps: float, s: int
) -> GrayMap:
    h, w = p.shape
    if s == 1:
        a, b = _coefficients(I, p, r=r, eps=eps)
        return _apply(box_filter(a, radius=r), box_filter(b, radius=r), I)

    if h < s or w < s:
        raise FilterError(f"extent {h}x{w} smaller than subsample factor {s}")

    lh, lw = h // s, w // s
    r_lo = ceil(r / s)
    I_lo = resize_bilinear(I, h=lh, w=lw)
    p_lo = resize_bilinear(p, h=lh, w=lw)

    a, b = _coefficients(I_lo, p_lo, r=r_lo, eps=eps)
    mean_a = resize_bilinear(box_filter(a, radius=r_lo), h=h, w=w)
    mean_b = resize_bilinear(box_filter(b, radius=r_lo), h=h, w=w)
    return _apply(mean_a, mean_b, I)


def guided_filter_gray(I: GrayMap, p: GrayMap, params: GuidedFilterParams) -> GrayMap:
    _check(I, p, params=params)
    if I.ndim != 2:
        raise FilterError(f"grey guidance must be (H, W) -- {I.shape}")
    return _filter(I, p, r=params.radius, eps=params.eps, s=1)


def guided_filter_color(
    I: NDArray[np.float64], p: GrayMap, params: GuidedFilterParams
) -> GrayMap:
    _check(I, p, params=params)
    if I.ndim != 3:
        raise FilterError(f"colour guidance must be (H, W, C) -- {I.shape}")
    return _filter(I, p, r=params.radius, eps=params.eps, s=1)


def fast_guided_filter(
    I: NDArray[np.float64], p: GrayMap, params: GuidedFilterParams
) -> GrayMap:
    _check(I, p, params=params)
    return _filter(I, p, r=params.radius, eps=params.eps, s=params.subsample)
