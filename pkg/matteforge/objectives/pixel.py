import torch
import torch.nn.functional as F
from torch import Tensor

from ..shared.settings import LossWeights
from .types import LossError


def _same(*tensors: Tensor) -> None:
    head, *rest = tensors
    for other in rest:
        if other.shape != head.shape:
            raise LossError(f"extent mismatch -- {tuple(head.shape)} != {tuple(other.shape)}")


def global_loss(alpha: Tensor, alpha_pred: Tensor) -> Tensor:
    _same(alpha, alpha_pred)
    return torch.mean(torch.abs(alpha - alpha_pred))


def boundary_map(alpha: Tensor, mask: Tensor, epsilon: float, dilation: int) -> Tensor:
    """
    1 where |alpha - mask| > epsilon, grown by a dilation x dilation element

    Same footprint as imgproc.morph.dilate
    """

    _same(alpha, mask)
    if dilation < 1:
        raise LossError(f"dilation must be >= 1 -- {dilation}")

    with torch.no_grad():
        flat = alpha.ndim == 2
        diff = (torch.abs(alpha - mask) > epsilon).to(alpha.dtype)
        x = diff[None, None] if flat else diff
        if x.ndim != 4:
            raise LossError(f"expected (H, W) or (N, C, H, W) -- {tuple(alpha.shape)}")

        left = (dilation + 1) // 2 - 1
        right = dilation // 2
        padded = F.pad(x, (left, right, left, right), value=0)
        grown = F.max_pool2d(padded, kernel_size=dilation, stride=1)
        return grown[0, 0] if flat else grown


def local_loss(
    alpha: Tensor, alpha_pred: Tensor, mask: Tensor, weights: LossWeights
) -> Tensor:
    _same(alpha, alpha_pred, mask)
    delta = boundary_map(alpha, mask, epsilon=weights.epsilon, dilation=weights.dilation)
    return torch.mean(delta * torch.abs(alpha - alpha_pred))
