"""Classical separable 2D Daubechies transform (the comparison baseline).

Reuses the same filter machinery at ``xi = 0`` and the same periodic stage
kernels as the mixed transform, so comparisons between the two isolate the
transform structure and nothing else.  Subband names give the filter applied
along the vertical axis first: ``lh`` is low-pass vertical, high-pass
horizontal.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import kernels
from .filters import make_filter_pair
from .grid import ImageGrid, is_power_of_two

__all__ = ["DbLevel", "Db2dCoefficients", "db_forward", "db_inverse", "scatter_rows"]


@dataclass(frozen=True)
class DbLevel:
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray


@dataclass(frozen=True)
class Db2dCoefficients:
    """Multi-level subband pyramid: levels finest-first, LL coarsest."""

    order: int
    coarse_level: int
    width: int
    height: int
    levels: tuple[DbLevel, ...]
    ll: np.ndarray

    @property
    def total_count(self) -> int:
        n = self.ll.size
        for lev in self.levels:
            n += lev.lh.size + lev.hl.size + lev.hh.size
        return int(n)

    def energy(self) -> float:
        e = float(np.sum(self.ll**2))
        for lev in self.levels:
            e += float(np.sum(lev.lh**2) + np.sum(lev.hl**2) + np.sum(lev.hh**2))
        return e

    def flatten(self) -> np.ndarray:
        """Canonical real vector: per level finest-first lh, hl, hh
        (row-major), then ll."""
        parts = []
        for lev in self.levels:
            parts.extend((lev.lh.ravel(), lev.hl.ravel(), lev.hh.ravel()))
        parts.append(self.ll.ravel())
        return np.concatenate(parts)

    def with_flat(self, values: np.ndarray) -> "Db2dCoefficients":
        values = np.asarray(values, dtype=np.float64)
        if values.size != self.total_count:
            raise ValueError(
                f"expected {self.total_count} coefficients, got {values.size}"
            )
        pos = 0
        new_levels = []
        for lev in self.levels:
            bands = []
            for band in (lev.lh, lev.hl, lev.hh):
                bands.append(values[pos : pos + band.size].reshape(band.shape))
                pos += band.size
            new_levels.append(DbLevel(*bands))
        ll = values[pos:].reshape(self.ll.shape)
        return replace(self, levels=tuple(new_levels), ll=ll)


def _num_stages(width: int, height: int, coarse_level: int) -> int:
    j_min = int(np.log2(min(width, height)))
    if not 0 <= coarse_level < j_min:
        raise ValueError(
            f"coarse level must satisfy 0 <= m0 < {j_min}, got {coarse_level}"
        )
    return j_min - coarse_level


def _split_axis0(arr: np.ndarray, h: np.ndarray, g: np.ndarray):
    batch = arr.shape[1]
    hh = np.ascontiguousarray(np.broadcast_to(h, (batch, h.size)))
    gg = np.ascontiguousarray(np.broadcast_to(g, (batch, g.size)))
    a, d = kernels.analyze_periodic(np.ascontiguousarray(arr.T), hh, gg)
    return a.T, d.T


def _merge_axis0(a: np.ndarray, d: np.ndarray, h: np.ndarray, g: np.ndarray):
    batch = a.shape[1]
    hh = np.ascontiguousarray(np.broadcast_to(h, (batch, h.size)))
    gg = np.ascontiguousarray(np.broadcast_to(g, (batch, g.size)))
    out = kernels.synthesize_periodic(
        np.ascontiguousarray(a.T), np.ascontiguousarray(d.T), hh, gg
    )
    return out.T


def db_forward(image: ImageGrid, order: int, coarse_level: int) -> Db2dCoefficients:
    """Separable multi-level analysis with the order-N, xi=0 filter pair."""
    if not (is_power_of_two(image.width) and is_power_of_two(image.height)):
        raise ValueError("dimensions must be powers of two")
    stages = _num_stages(image.width, image.height, coarse_level)
    pair = make_filter_pair(order, 0.0, 0)
    cur = image.pixels.astype(np.complex128)
    levels = []
    for _ in range(stages):
        lo, hi = _split_axis0(cur, pair.h, pair.g)
        ll, lh = _split_axis0(lo.T, pair.h, pair.g)
        hl, hh = _split_axis0(hi.T, pair.h, pair.g)
        levels.append(DbLevel(lh=lh.T.real, hl=hl.T.real, hh=hh.T.real))
        cur = ll.T
    return Db2dCoefficients(
        order=int(order),
        coarse_level=int(coarse_level),
        width=image.width,
        height=image.height,
        levels=tuple(levels),
        ll=cur.real,
    )


def db_inverse(coeffs: Db2dCoefficients) -> ImageGrid:
    """Invert ``db_forward``."""
    pair = make_filter_pair(coeffs.order, 0.0, 0)
    cur = coeffs.ll.astype(np.complex128)
    for lev in reversed(coeffs.levels):
        if lev.lh.shape != cur.shape:
            raise ValueError(
                f"subband shape {lev.lh.shape} inconsistent with LL chain "
                f"{cur.shape}"
            )
        lo = _merge_axis0(cur.T, lev.lh.T.astype(np.complex128), pair.h, pair.g).T
        hi = _merge_axis0(
            lev.hl.T.astype(np.complex128), lev.hh.T.astype(np.complex128), pair.h, pair.g
        ).T
        cur = _merge_axis0(lo, hi, pair.h, pair.g)
    return ImageGrid.from_array(cur.real)


def scatter_rows(coeffs: Db2dCoefficients):
    """Rows in the shared scatter schema; eta is fixed to 0 and the kind
    column carries the subband label."""
    j_fine = int(np.log2(min(coeffs.width, coeffs.height)))
    for s, lev in enumerate(coeffs.levels):
        level = j_fine - 1 - s
        for kind, band in (("lh", lev.lh), ("hl", lev.hl), ("hh", lev.hh)):
            for j, v in enumerate(band.ravel()):
                yield (0, level, j, float(v), 0.0, kind)
    for j, v in enumerate(coeffs.ll.ravel()):
        yield (0, coeffs.coarse_level, j, float(v), 0.0, "ll")
