from math import ceil, cos, pi

from ..shared.settings import TrainConfig
from .types import TrainError


def warmup_steps(config: TrainConfig) -> int:
    return ceil(config.warmup_fraction * config.steps)


def lr_schedule(step: int, config: TrainConfig) -> float:
    """
    Linear warmup to lr over W steps, then half cosine down to 0 at T
    """

    T, W = config.steps, warmup_steps(config)
    if not 0 <= step <= T:
        raise TrainError(f"step {step} outside [0, {T}]")
    elif step < W:
        return config.lr * step / W
    else:
        return config.lr * 0.5 * (1 + cos(pi * (step - W) / (T - W)))
