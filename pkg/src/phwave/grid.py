"""Image container shared by the transforms, codec and I/O."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class InvalidImageError(ValueError):
    """Image fails the dimension or value constraints."""


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class ImageGrid:
    """Grayscale image with power-of-two dimensions.

    Pixels are stored as float64; 8-bit sources produce values in [0, 255],
    but reconstructed images may slightly overshoot that range (clipping
    happens only when writing files).
    """

    width: int
    height: int
    pixels: np.ndarray  # shape (height, width)

    @classmethod
    def from_array(cls, pixels) -> "ImageGrid":
        arr = np.asarray(pixels, dtype=np.float64)
        if arr.ndim != 2:
            raise InvalidImageError(f"expected a 2D array, got shape {arr.shape}")
        height, width = arr.shape
        if not (is_power_of_two(width) and is_power_of_two(height)):
            raise InvalidImageError(
                f"dimensions must be powers of two, got {width}x{height}"
            )
        if width < 2 or height < 2:
            raise InvalidImageError("image must be at least 2x2")
        if not np.all(np.isfinite(arr)):
            raise InvalidImageError("pixels must be finite")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        return cls(width=width, height=height, pixels=arr)
