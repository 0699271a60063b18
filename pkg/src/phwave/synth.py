"""Seeded synthetic test images.

Stand-ins for the 8-bit grayscale sources the toolkit targets: a smooth
"natural" scene with edges and texture, and a dark star field of Gaussian
point sources.  Both are deterministic given (size, seed) and return
integer-valued 8-bit pixels.
"""

from __future__ import annotations

import numpy as np

from .grid import ImageGrid

__all__ = ["natural_image", "star_field"]


def natural_image(size: int = 128, seed: int = 7) -> ImageGrid:
    """Smooth hills + oriented stripes + hard edges + mild texture."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size] / float(size)
    img = 90.0 + 110.0 * np.exp(-((x - 0.35) ** 2 + (y - 0.3) ** 2) / 0.16)
    img += 45.0 * np.exp(-((x - 0.75) ** 2 + (y - 0.7) ** 2) / 0.05)
    img += 18.0 * np.sin(2 * np.pi * (3.0 * x + 1.5 * y))
    img += 10.0 * np.sin(2 * np.pi * 7.0 * y)
    img[(x > 0.55) & (y < 0.4)] -= 60.0
    img[x + y > 1.55] += 35.0
    # band-limited texture: blur white noise with a separable kernel
    noise = rng.normal(size=(size, size))
    kern = np.array([1.0, 4.0, 6.0, 4.0, 1.0])
    kern /= kern.sum()
    for axis in (0, 1):
        noise = np.apply_along_axis(
            lambda v: np.convolve(np.pad(v, 2, mode="wrap"), kern, mode="valid"),
            axis,
            noise,
        )
    img += 6.0 * noise
    return ImageGrid.from_array(np.clip(np.rint(img), 0, 255))


def star_field(size: int = 128, seed: int = 11, stars: int | None = None) -> ImageGrid:
    """Dark constant background with Gaussian point sources."""
    rng = np.random.default_rng(seed)
    if stars is None:
        stars = max(12, (size * size) // 380)
    img = np.full((size, size), 8.0)
    y, x = np.mgrid[0:size, 0:size].astype(float)
    for _ in range(stars):
        cx, cy = rng.uniform(2, size - 2, size=2)
        amp = 30.0 + 210.0 * rng.random() ** 2
        sigma = rng.uniform(0.7, 1.7)
        r2 = (x - cx) ** 2 + (y - cy) ** 2
        img += amp * np.exp(-r2 / (2.0 * sigma * sigma))
    return ImageGrid.from_array(np.clip(np.rint(img), 0, 255))
