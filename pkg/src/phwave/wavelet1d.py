"""Non-stationary 1D wavelet analysis/synthesis on complex signals.

A plan fixes the full per-stage filter schedule for one frequency parameter
``xi``: the stage operating on length ``2**J`` input uses level index
``k = J - 1``, the next stage ``k = J - 2``, and so on down to the coarse
level ``m0``.  Fine scales therefore approach the classical Daubechies
filters (``x0 -> 1`` as ``k`` grows), which is the scale asymptotics the
construction is built around.

Two boundary modes:

* ``periodic`` — critically sampled, orthonormal, exact perfect
  reconstruction.  Used by the codec.
* ``expansive`` — symmetric (reflect) extension by ``taps - 1`` on each
  side, valid correlation, even-phase downsampling.  Per stage the output
  grows to ``ceil((n + taps - 1) / 2)`` per channel, so the transform is
  redundant.  Synthesis overlap-adds onto the extended domain and crops the
  extension back off, which reconstructs the input exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import kernels
from .filters import FilterPair, make_filter_pair

__all__ = [
    "Boundary",
    "WaveletPlan",
    "CoefficientPyramid",
    "make_plan",
    "analyze",
    "synthesize",
    "analyze_batch",
    "synthesize_batch",
]


class Boundary(str, Enum):
    PERIODIC = "periodic"
    EXPANSIVE = "expansive"


@dataclass(frozen=True)
class WaveletPlan:
    """Immutable per-frequency filter schedule; shareable across threads."""

    xi: float
    order: int
    log2n: int  # J: input length is 2**J
    coarse_level: int  # m0: coarsest retained level, 0 <= m0 < J
    boundary: Boundary
    stages: tuple[FilterPair, ...]  # stage s uses level index J - 1 - s

    @property
    def num_stages(self) -> int:
        return len(self.stages)

    @property
    def signal_length(self) -> int:
        return 2**self.log2n

    def stage_input_lengths(self) -> list[int]:
        """Input length seen by each analysis stage."""
        taps = 2 * self.order
        lengths = [self.signal_length]
        for _ in range(self.num_stages - 1):
            n = lengths[-1]
            if self.boundary is Boundary.PERIODIC:
                lengths.append(n // 2)
            else:
                lengths.append((n + taps) // 2)
        return lengths

    def output_lengths(self) -> list[int]:
        """Lengths of the stored vectors: details finest-first, then approx."""
        taps = 2 * self.order
        outs = []
        for n in self.stage_input_lengths():
            outs.append(n // 2 if self.boundary is Boundary.PERIODIC else (n + taps) // 2)
        return outs + [outs[-1]]


def make_plan(
    xi: float,
    order: int,
    log2n: int,
    coarse_level: int,
    boundary: Boundary | str = Boundary.PERIODIC,
) -> WaveletPlan:
    """Build (and cache) the filter schedule for one frequency."""
    return _make_plan(float(xi), int(order), int(log2n), int(coarse_level), Boundary(boundary))


@lru_cache(maxsize=None)
def _make_plan(xi, order, log2n, coarse_level, boundary):
    if log2n < 1:
        raise ValueError(f"log2 signal length must be >= 1, got {log2n}")
    if not 0 <= coarse_level < log2n:
        raise ValueError(
            f"coarse level must satisfy 0 <= m0 < {log2n}, got {coarse_level}"
        )
    stages = tuple(
        make_filter_pair(order, xi, log2n - 1 - s)
        for s in range(log2n - coarse_level)
    )
    return WaveletPlan(
        xi=xi,
        order=order,
        log2n=log2n,
        coarse_level=coarse_level,
        boundary=boundary,
        stages=stages,
    )


@dataclass(frozen=True)
class CoefficientPyramid:
    """Analysis output: detail vectors finest-first plus one approx vector."""

    approx: np.ndarray
    details: tuple[np.ndarray, ...]
    lengths: tuple[int, ...]  # detail lengths finest-first, approx last

    @property
    def total_count(self) -> int:
        return int(sum(self.lengths))

    def energy(self) -> float:
        e = float(np.sum(np.abs(self.approx) ** 2))
        for d in self.details:
            e += float(np.sum(np.abs(d) ** 2))
        return e


def _stage_filters(plans: Sequence[WaveletPlan], s: int):
    h = np.ascontiguousarray([p.stages[s].h for p in plans])
    g = np.ascontiguousarray([p.stages[s].g for p in plans])
    return h, g


def _check_same_schedule(plans: Sequence[WaveletPlan]) -> WaveletPlan:
    first = plans[0]
    for p in plans[1:]:
        if (p.order, p.log2n, p.coarse_level, p.boundary) != (
            first.order,
            first.log2n,
            first.coarse_level,
            first.boundary,
        ):
            raise ValueError("batched plans must share order, J, m0 and boundary")
    return first


def analyze_batch(
    signals: np.ndarray, plans: Sequence[WaveletPlan]
) -> list[CoefficientPyramid]:
    """Analyze a (batch, 2**J) array, one plan per row."""
    first = _check_same_schedule(plans)
    x = np.ascontiguousarray(signals, dtype=np.complex128)
    if x.ndim != 2 or x.shape[0] != len(plans):
        raise ValueError("signals must be 2D with one row per plan")
    if x.shape[1] != first.signal_length:
        raise ValueError(
            f"signal length {x.shape[1]} does not match plan length "
            f"{first.signal_length}"
        )
    taps = 2 * first.order
    periodic = first.boundary is Boundary.PERIODIC
    detail_rows = []
    for s in range(first.num_stages):
        h, g = _stage_filters(plans, s)
        if periodic:
            a, d = kernels.analyze_periodic(x, h, g)
        else:
            ext = np.pad(x, ((0, 0), (taps - 1, taps - 1)), mode="symmetric")
            a, d = kernels.analyze_valid(np.ascontiguousarray(ext), h, g)
        detail_rows.append(d)
        x = a
    out = []
    for f in range(len(plans)):
        details = tuple(np.ascontiguousarray(d[f]) for d in detail_rows)
        approx = np.ascontiguousarray(x[f])
        lengths = tuple(len(d) for d in details) + (len(approx),)
        out.append(CoefficientPyramid(approx=approx, details=details, lengths=lengths))
    return out


def synthesize_batch(
    pyramids: Sequence[CoefficientPyramid], plans: Sequence[WaveletPlan]
) -> np.ndarray:
    """Invert ``analyze_batch``; returns a (batch, 2**J) complex array."""
    first = _check_same_schedule(plans)
    if len(pyramids) != len(plans):
        raise ValueError("need one pyramid per plan")
    expected = tuple(first.output_lengths())
    for p in pyramids:
        if p.lengths != expected or len(p.details) != first.num_stages:
            raise ValueError(
                f"pyramid shape {p.lengths} does not match plan shape {expected}"
            )
    taps = 2 * first.order
    periodic = first.boundary is Boundary.PERIODIC
    stage_inputs = first.stage_input_lengths()
    x = np.ascontiguousarray([p.approx for p in pyramids], dtype=np.complex128)
    for s in range(first.num_stages - 1, -1, -1):
        h, g = _stage_filters(plans, s)
        d = np.ascontiguousarray(
            [p.details[s] for p in pyramids], dtype=np.complex128
        )
        if periodic:
            x = kernels.synthesize_periodic(x, d, h, g)
        else:
            n_in = stage_inputs[s]
            ext = kernels.synthesize_valid(x, d, h, g, n_in + 2 * (taps - 1))
            x = np.ascontiguousarray(ext[:, taps - 1 : taps - 1 + n_in])
    return x


def analyze(signal: np.ndarray, plan: WaveletPlan) -> CoefficientPyramid:
    """Analyze one complex signal of length ``2**plan.log2n``."""
    sig = np.asarray(signal, dtype=np.complex128)
    if sig.ndim != 1:
        raise ValueError("signal must be one-dimensional")
    return analyze_batch(sig[None, :], [plan])[0]


def synthesize(pyramid: CoefficientPyramid, plan: WaveletPlan) -> np.ndarray:
    """Invert ``analyze`` for one pyramid."""
    return synthesize_batch([pyramid], [plan])[0]
