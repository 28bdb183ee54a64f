import numpy as np
import torch
import torch.nn.functional as F
from torch import Tensor

from .types import GaborBank, GaborError


def bank_weight(bank: GaborBank, like: Tensor) -> Tensor:
    """
    (F, 1, k, k) conv weight on the device / dtype of `like`
    """

    stacked = np.stack(bank.kernels)[:, None]
    return torch.as_tensor(stacked, dtype=like.dtype, device=like.device)


def gabor_loss(alpha: Tensor, alpha_pred: Tensor, bank: GaborBank) -> Tensor:
    """
    Sum over filters of the per pixel mean squared response difference

    Takes (H, W) or (N, 1, H, W)
    """

    if alpha.shape != alpha_pred.shape:
        raise GaborError(f"extent mismatch -- {tuple(alpha.shape)} != {tuple(alpha_pred.shape)}")
    if alpha.ndim == 2:
        alpha, alpha_pred = alpha[None, None], alpha_pred[None, None]
    if alpha.ndim != 4 or alpha.shape[1] != 1:
        raise GaborError(f"expected (H, W) or (N, 1, H, W) -- {tuple(alpha.shape)}")

    weight = bank_weight(bank, like=alpha_pred)
    pad = weight.shape[-1] // 2
    diff = F.conv2d(alpha - alpha_pred, weight, padding=pad)
    return diff.pow(2).mean(dim=(0, 2, 3)).sum()
