from dataclasses import replace
from unittest import TestCase

import torch

from ...matteforge.gabor.bank import default_bank
from ...matteforge.objectives.full import combine, full_generator_loss
from ...matteforge.objectives.types import LossTerms
from ...matteforge.shared.config import load_settings


def _scalar(x: float) -> torch.Tensor:
    return torch.tensor(x, dtype=torch.float64)


class FullGeneratorLoss(TestCase):
    def test_1(self) -> None:
        weights = load_settings().loss
        a, b, c, d = 0.3, 0.7, 0.011, 0.45
        terms = LossTerms(g=_scalar(a), l=_scalar(b), gb=_scalar(c), adv=_scalar(d))
        self.assertAlmostEqual(combine(terms, weights).item(), 10 * a + b + 200 * c + d)

    def test_2(self) -> None:
        weights = load_settings().loss
        gen = torch.Generator().manual_seed(0)
        alpha = torch.rand(2, 1, 16, 16, generator=gen, dtype=torch.float64)
        mask = (alpha > 0.5).double()
        total, terms = full_generator_loss(
            alpha, alpha.clone(), mask, torch.ones(2, 1, 3, 3, dtype=torch.float64), default_bank(), weights
        )
        self.assertEqual(total.item(), 0)
        self.assertEqual(terms.adv.item(), 0)

    def test_3(self) -> None:
        weights = replace(load_settings().loss, g=0, l=0, gb=0, adv=0)
        gen = torch.Generator().manual_seed(1)
        alpha = torch.rand(1, 1, 16, 16, generator=gen, dtype=torch.float64)
        pred = torch.rand(1, 1, 16, 16, generator=gen, dtype=torch.float64)
        total, terms = full_generator_loss(
            alpha, pred, (alpha > 0.5).double(), torch.zeros(1, 1, 3, 3, dtype=torch.float64), default_bank(), weights
        )
        self.assertEqual(total.item(), 0)
        self.assertGreater(terms.g.item(), 0)
