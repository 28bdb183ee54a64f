from typing import Tuple

import torch
import torch.nn.functional as F
from torch import Tensor, nn
from torch.nn.utils.parametrize import register_parametrization

_SIGMA_FLOOR = 1e-12
_WARMUP_ITERATIONS = 15


def power_iteration(
    matrix: Tensor, u: Tensor, n_iterations: int, eps: float = 1e-12
) -> Tuple[Tensor, Tensor]:
    with torch.no_grad():
        v = F.normalize(torch.mv(matrix.t(), u), dim=0, eps=eps)
        u = F.normalize(torch.mv(matrix, v), dim=0, eps=eps)
        for _ in range(n_iterations - 1):
            v = F.normalize(torch.mv(matrix.t(), u), dim=0, eps=eps)
            u = F.normalize(torch.mv(matrix, v), dim=0, eps=eps)
    return u, v


def spectral_norm_estimate(matrix: Tensor, u: Tensor, v: Tensor) -> Tensor:
    return torch.clamp(torch.dot(u, torch.mv(matrix, v)), min=_SIGMA_FLOOR)


def spectral_normalize(
    weight: Tensor, u: Tensor, n_iterations: int = 1, eps: float = 1e-12
) -> Tuple[Tensor, Tensor, Tensor]:
    """
    W / (u^T W v) after `n_iterations` power steps, weight flattened to (out, in*k*k)

    -> (normalized weight, u, v)
    """

    if n_iterations < 1:
        raise ValueError(f"n_iterations must be >= 1 -- {n_iterations}")

    matrix = weight.flatten(1)
    u, v = power_iteration(matrix.detach(), u=u, n_iterations=n_iterations, eps=eps)
    sigma = spectral_norm_estimate(matrix, u=u, v=v)
    return weight / sigma, u, v


class SpectralNorm(nn.Module):
    """
    Parametrization: training forwards advance (u, v), eval reuses them
    """

    def __init__(self, weight: Tensor, n_iterations: int) -> None:
        super().__init__()
        self.n_iterations = n_iterations

        matrix = weight.detach().flatten(1)
        rows, cols = matrix.shape
        u = F.normalize(matrix.new_empty(rows).normal_(0, 1), dim=0)
        u, v = power_iteration(matrix, u=u, n_iterations=_WARMUP_ITERATIONS)
        self.register_buffer("u", u)
        self.register_buffer("v", v)

    def forward(self, weight: Tensor) -> Tensor:
        if self.training:
            normalized, u, v = spectral_normalize(
                weight, u=self.u, n_iterations=self.n_iterations
            )
            with torch.no_grad():
                self.u.copy_(u)
                self.v.copy_(v)
            return normalized
        else:
            u, v = self.u.clone(), self.v.clone()
            return weight / spectral_norm_estimate(weight.flatten(1), u=u, v=v)


def apply_spectral_norm(module: nn.Module, n_iterations: int) -> nn.Module:
    register_parametrization(
        module, "weight", SpectralNorm(module.weight, n_iterations=n_iterations)
    )
    return module
