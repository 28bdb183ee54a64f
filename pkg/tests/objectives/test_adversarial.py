from math import sqrt
from unittest import TestCase

import torch
from torch.autograd import gradcheck

from ...matteforge.objectives.adversarial import d_loss, g_adv_loss, gradient_penalty


def _batch(seed: int, size: int = 8, n: int = 2):
    gen = torch.Generator().manual_seed(seed)
    alpha = torch.rand(n, 1, size, size, generator=gen, dtype=torch.float64)
    pred = torch.rand(n, 1, size, size, generator=gen, dtype=torch.float64)
    image = torch.rand(n, 3, size, size, generator=gen, dtype=torch.float64)
    mask = (torch.rand(n, 1, size, size, generator=gen) > 0.5).double()
    return alpha, pred, image, mask


def _constant(value: float):
    return lambda a, i, m: torch.full((a.shape[0], 1, 3, 3), value, dtype=a.dtype)


class DLoss(TestCase):
    def test_1(self) -> None:
        _, _, image, mask = _batch(0)
        real, fake = torch.ones(2, 1, 8, 8, dtype=torch.float64), torch.zeros(2, 1, 8, 8, dtype=torch.float64)
        self.assertAlmostEqual(d_loss(lambda a, i, m: a, real, fake, image, mask).item(), 0, places=6)

    def test_2(self) -> None:
        _, _, image, mask = _batch(1)
        real, fake = torch.ones(2, 1, 8, 8, dtype=torch.float64), torch.zeros(2, 1, 8, 8, dtype=torch.float64)
        self.assertAlmostEqual(d_loss(lambda a, i, m: 1 - a, real, fake, image, mask).item(), 2, places=6)

    def test_3(self) -> None:
        alpha, pred, image, mask = _batch(2)
        self.assertAlmostEqual(d_loss(_constant(0.5), alpha, pred, image, mask).item(), 0.5, places=6)

    def test_4(self) -> None:
        alpha, _, image, mask = _batch(3)
        pred = alpha.clone().requires_grad_()
        scale = torch.tensor(2.0, dtype=torch.float64, requires_grad=True)
        loss = d_loss(lambda a, i, m: a * scale, alpha, pred, image, mask)
        loss.backward()
        self.assertIsNotNone(scale.grad)
        self.assertIsNone(pred.grad)


class GAdvLoss(TestCase):
    def test_1(self) -> None:
        alpha, pred, image, mask = _batch(4)
        self.assertAlmostEqual(g_adv_loss(_constant(1.0), pred, image, mask).item(), 0, places=6)
        self.assertAlmostEqual(g_adv_loss(_constant(0.0), pred, image, mask).item(), 1, places=6)
        self.assertAlmostEqual(g_adv_loss(_constant(0.5), pred, image, mask).item(), 0.25, places=6)

    def test_2(self) -> None:
        _, pred, image, mask = _batch(5, n=1)
        pred.requires_grad_()
        weight = torch.linspace(-1, 1, 9, dtype=torch.float64).reshape(1, 1, 3, 3)

        def critic(a, i, m):
            return torch.nn.functional.conv2d(a * m + i.mean(dim=1, keepdim=True), weight)

        self.assertTrue(
            gradcheck(lambda p: g_adv_loss(critic, p, image, mask), (pred,), eps=1e-6, atol=1e-8, rtol=1e-4)
        )


class GradientPenalty(TestCase):
    def test_1(self) -> None:
        alpha, pred, image, mask = _batch(6)
        penalty = gradient_penalty(_constant(0.3), alpha, pred, image, mask, lambda_gp=10)
        self.assertAlmostEqual(penalty.item(), 10, places=6)

    def test_2(self) -> None:
        alpha, pred, image, mask = _batch(7, size=8)
        n_pixels = 64

        def critic(a, i, m):
            return a.flatten(1).mean(dim=1).reshape(-1, 1, 1, 1)

        penalty = gradient_penalty(critic, alpha, pred, image, mask, lambda_gp=10)
        self.assertAlmostEqual(penalty.item(), 10 * (1 / sqrt(n_pixels) - 1) ** 2, places=6)

    def test_3(self) -> None:
        alpha, pred, image, mask = _batch(8)
        seen = []

        def critic(a, i, m):
            seen.append(a.detach().clone())
            return a.sum(dim=(1, 2, 3)).reshape(-1, 1, 1, 1)

        gradient_penalty(critic, alpha, pred, image, mask, lambda_gp=10, t=torch.ones(2, 1, 1, 1, dtype=torch.float64))
        self.assertTrue(torch.equal(seen[0], alpha))

    def test_4(self) -> None:
        alpha, pred, image, mask = _batch(9)
        gen_a = torch.Generator().manual_seed(10)
        gen_b = torch.Generator().manual_seed(10)

        def critic(a, i, m):
            return torch.sin(3 * a) * m

        lhs = gradient_penalty(critic, alpha, pred, image, mask, lambda_gp=10, generator=gen_a)
        rhs = gradient_penalty(critic, alpha, pred, image, mask, lambda_gp=10, generator=gen_b)
        self.assertEqual(lhs.item(), rhs.item())

    def test_5(self) -> None:
        alpha, pred, image, mask = _batch(11, n=1)
        pred.requires_grad_()
        t = torch.full((1, 1, 1, 1), 0.4, dtype=torch.float64)

        def critic(a, i, m):
            return torch.sin(3 * a) ** 2 + i.mean(dim=1, keepdim=True)

        self.assertTrue(
            gradcheck(
                lambda p: gradient_penalty(critic, alpha, p, image, mask, lambda_gp=10, t=t),
                (pred,),
                eps=1e-6,
                atol=1e-8,
                rtol=1e-4,
            )
        )
