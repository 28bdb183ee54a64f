import torch

from .types import ConfigError


def pick_device(name: str) -> torch.device:
    if name == "auto":
        return torch.device("cuda" if torch.cuda.is_available() else "cpu")
    elif name == "cpu":
        return torch.device("cpu")
    elif name.startswith("cuda"):
        if not torch.cuda.is_available():
            raise ConfigError(f"device {name} requested, but CUDA is unavailable")
        return torch.device(name)
    else:
        raise ConfigError(f"unknown device -- {name}")
