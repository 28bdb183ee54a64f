from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import NDArray
from scipy.ndimage import generate_binary_structure, grey_dilation, grey_erosion, label

from ..image.types import ImageError


@dataclass(frozen=True)
class StructuringElement:
    """
    Square k x k, all ones, covering offsets [-floor(k/2), ceil(k/2) - 1]
    """

    size: int

    @property
    def offsets(self) -> Tuple[int, int]:
        k = self.size
        return -(k // 2), (k + 1) // 2 - 1


def _check(se: StructuringElement) -> Tuple[int, int]:
    if se.size < 1:
        raise ImageError(f"structuring element size must be >= 1 -- {se.size}")
    return se.size, se.size


def dilate(plane: NDArray[np.float64], se: StructuringElement) -> NDArray[np.float64]:
    """
    Max over the reflected element, so that erode(dilate(x)) >= x for even sizes too
    """

    size = _check(se)
    if se.size == 1:
        return plane.copy()
    return grey_dilation(plane, size=size, mode="nearest")


def erode(plane: NDArray[np.float64], se: StructuringElement) -> NDArray[np.float64]:
    size = _check(se)
    if se.size == 1:
        return plane.copy()
    return grey_erosion(plane, size=size, mode="nearest")


def dilate_n(
    plane: NDArray[np.float64], se: StructuringElement, repeats: int
) -> NDArray[np.float64]:
    for _ in range(repeats):
        plane = dilate(plane, se=se)
    return plane


def erode_n(
    plane: NDArray[np.float64], se: StructuringElement, repeats: int
) -> NDArray[np.float64]:
    for _ in range(repeats):
        plane = erode(plane, se=se)
    return plane


def binarize(alpha: NDArray[np.float64], threshold: float = 0.5) -> NDArray[np.float64]:
    return (alpha > threshold).astype(np.float64)


def connected_components(
    binary: NDArray[np.float64], connectivity: int = 4
) -> Tuple[NDArray[np.int32], NDArray[np.int64]]:
    """
    -> (labels, sizes), sizes[i] is the pixel count of label i + 1
    """

    if connectivity not in {4, 8}:
        raise ImageError(f"connectivity must be 4 or 8 -- {connectivity}")
    if binary.size and not np.isin(binary, (0, 1)).all():
        raise ImageError("connected_components expects a {0, 1} map")

    structure = generate_binary_structure(2, 1 if connectivity == 4 else 2)
    labels, count = label(binary > 0, structure=structure)
    sizes = np.bincount(labels.ravel(), minlength=count + 1)[1:]
    return labels.astype(np.int32), sizes.astype(np.int64)
