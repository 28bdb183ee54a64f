from typing import Tuple

from torch import Tensor

from ..gabor.loss import gabor_loss
from ..gabor.types import GaborBank
from ..shared.settings import LossWeights
from .adversarial import lsgan_generator_term
from .pixel import global_loss, local_loss
from .types import LossTerms


def combine(terms: LossTerms, weights: LossWeights) -> Tensor:
    return (
        weights.g * terms.g
        + weights.l * terms.l
        + weights.gb * terms.gb
        + weights.adv * terms.adv
    )


def full_generator_loss(
    alpha: Tensor,
    alpha_pred: Tensor,
    mask: Tensor,
    fake_logits: Tensor,
    bank: GaborBank,
    weights: LossWeights,
) -> Tuple[Tensor, LossTerms]:
    terms = LossTerms(
        g=global_loss(alpha, alpha_pred),
        l=local_loss(alpha, alpha_pred, mask=mask, weights=weights),
        gb=gabor_loss(alpha, alpha_pred, bank=bank),
        adv=lsgan_generator_term(fake_logits),
    )
    return combine(terms, weights=weights), terms
