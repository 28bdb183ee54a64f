from torch import nn


def count_parameters(network: nn.Module) -> int:
    """
    Trainable scalars only, power iteration buffers are not parameters
    """

    return sum(p.numel() for p in network.parameters() if p.requires_grad)
