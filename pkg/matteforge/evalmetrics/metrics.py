"""
Matting errors, all restricted to the trimap's unknown region
"""

import numpy as np

from ..image.types import ImageError, Label, check_gray, check_trimap
from ..imgproc.conv import gaussian_derivative_magnitude
from ..imgproc.morph import connected_components
from ..shared.types import GrayMap, Trimap
from .types import MetricError, SampleMetrics

_SIGMA = 1.4
_THRESHOLDS = np.arange(11) / 10
_TOLERANCE = 0.15

DISPLAY = 1e-3


def unknown_region(trimap: Trimap) -> GrayMap:
    return (check_trimap(trimap) == Label.UNKNOWN).astype(np.float64)


def _support(alpha_pred: GrayMap, alpha: GrayMap, region: GrayMap) -> np.ndarray:
    if not alpha_pred.shape == alpha.shape == region.shape:
        raise MetricError(
            f"extent mismatch -- {alpha_pred.shape}, {alpha.shape}, {region.shape}"
        )
    support = region > 0
    if not support.any():
        raise MetricError("empty unknown region")
    return support


def mse(alpha_pred: GrayMap, alpha: GrayMap, region: GrayMap) -> float:
    support = _support(alpha_pred, alpha, region)
    diff = (alpha_pred - alpha)[support]
    return float(np.sum(diff**2) / diff.size)


def sad(alpha_pred: GrayMap, alpha: GrayMap, region: GrayMap) -> float:
    """
    In thousands
    """

    support = _support(alpha_pred, alpha, region)
    return float(np.sum(np.abs(alpha_pred - alpha)[support]) / 1000)


def gradient_error(alpha_pred: GrayMap, alpha: GrayMap, region: GrayMap) -> float:
    support = _support(alpha_pred, alpha, region)
    g_pred = gaussian_derivative_magnitude(alpha_pred, sigma=_SIGMA)
    g = gaussian_derivative_magnitude(alpha, sigma=_SIGMA)
    return float(np.sum(((g_pred - g) ** 2)[support]))


def _largest_component(binary: np.ndarray) -> np.ndarray:
    labels, sizes = connected_components(binary.astype(np.float64), connectivity=4)
    if not sizes.size:
        return np.zeros(binary.shape, dtype=bool)
    return labels == int(np.argmax(sizes)) + 1


def _phi(alpha: GrayMap, level: GrayMap) -> GrayMap:
    d = alpha - level
    return 1 - d * (d >= _TOLERANCE)


def connectivity_error(alpha_pred: GrayMap, alpha: GrayMap, region: GrayMap) -> float:
    """
    level(i): the threshold below the first one at which i leaves the largest
    4-connected component of the jointly thresholded mattes, 1 if it never leaves
    """

    support = _support(alpha_pred, alpha, region)
    level = np.full(alpha.shape, -1.0)
    for prev, theta in zip(_THRESHOLDS, _THRESHOLDS[1:]):
        omega = _largest_component((alpha_pred >= theta) & (alpha >= theta))
        level[(level == -1) & ~omega] = prev
    level[level == -1] = 1

    diff = np.abs(_phi(alpha_pred, level) - _phi(alpha, level))
    return float(np.sum(diff[support]))


def clamp_known(alpha: GrayMap, trimap: Trimap) -> GrayMap:
    clamped = alpha.copy()
    clamped[trimap == Label.FG] = 1.0
    clamped[trimap == Label.BG] = 0.0
    return clamped


def evaluate_sample(
    sample_id: str, alpha_pred: GrayMap, alpha: GrayMap, trimap: Trimap
) -> SampleMetrics:
    """
    Known trimap labels overwrite both mattes first, so only unknown pixels matter
    """

    try:
        check_gray(alpha_pred)
        check_gray(alpha)
        region = unknown_region(trimap)
    except ImageError as e:
        raise MetricError(f"{sample_id} :: {e}")
    if not alpha_pred.shape == alpha.shape == trimap.shape:
        raise MetricError(
            f"{sample_id} :: extent mismatch -- {alpha_pred.shape}, {alpha.shape}, {trimap.shape}"
        )

    pred = clamp_known(alpha_pred, trimap=trimap)
    gt = clamp_known(alpha, trimap=trimap)
    try:
        return SampleMetrics(
            id=sample_id,
            mse=mse(pred, gt, region=region),
            sad=sad(pred, gt, region=region),
            grad=gradient_error(pred, gt, region=region),
            conn=connectivity_error(pred, gt, region=region),
        )
    except MetricError as e:
        raise MetricError(f"{sample_id} :: {e}")
