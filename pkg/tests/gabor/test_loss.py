from unittest import TestCase

import numpy as np
import torch
from torch.autograd import gradcheck

from ...matteforge.gabor.bank import default_bank
from ...matteforge.gabor.loss import gabor_loss
from ...matteforge.gabor.types import GaborError


def _oracle(a: np.ndarray, b: np.ndarray, kernels) -> float:
    h, w = a.shape
    total = 0.0
    for kernel in kernels:
        size = kernel.shape[0]
        half = size // 2
        acc = 0.0
        for i in range(h):
            for j in range(w):
                response = 0.0
                for u in range(size):
                    for v in range(size):
                        y, x = i + u - half, j + v - half
                        if 0 <= y < h and 0 <= x < w:
                            response += kernel[u, v] * (a[y, x] - b[y, x])
                acc += response**2
        total += acc / (h * w)
    return total


class GaborLoss(TestCase):
    def test_1(self) -> None:
        alpha = torch.rand(2, 1, 12, 12, dtype=torch.float64)
        self.assertEqual(gabor_loss(alpha, alpha.clone(), default_bank()).item(), 0.0)

    def test_2(self) -> None:
        gen = torch.Generator().manual_seed(0)
        a = torch.rand(1, 1, 10, 10, generator=gen, dtype=torch.float64)
        b = torch.rand(1, 1, 10, 10, generator=gen, dtype=torch.float64)
        bank = default_bank()
        self.assertAlmostEqual(gabor_loss(a, b, bank).item(), gabor_loss(b, a, bank).item())

    def test_3(self) -> None:
        rng = np.random.default_rng(1)
        a, b = rng.uniform(size=(2, 16, 16))
        bank = default_bank()
        loss = gabor_loss(torch.from_numpy(a), torch.from_numpy(b), bank).item()
        self.assertAlmostEqual(loss, _oracle(a, b, bank.kernels), delta=1e-6)

    def test_4(self) -> None:
        with self.assertRaises(GaborError):
            gabor_loss(torch.zeros(8, 8), torch.zeros(8, 9), default_bank())

    def test_5(self) -> None:
        gen = torch.Generator().manual_seed(2)
        alpha = torch.rand(1, 1, 8, 8, generator=gen, dtype=torch.float64)
        pred = torch.rand(1, 1, 8, 8, generator=gen, dtype=torch.float64, requires_grad=True)
        bank = default_bank()
        self.assertTrue(
            gradcheck(lambda p: gabor_loss(alpha, p, bank), (pred,), eps=1e-6, atol=1e-8, rtol=1e-4)
        )

    def test_6(self) -> None:
        gen = torch.Generator().manual_seed(3)
        a = torch.rand(1, 1, 12, 12, generator=gen, dtype=torch.float64)
        b = torch.rand(1, 1, 12, 12, generator=gen, dtype=torch.float64)
        self.assertGreater(gabor_loss(a, b, default_bank()).item(), 0)
