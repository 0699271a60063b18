"""Mixed Fourier x wavelet 2D transform.

The horizontal image axis is treated as periodic and goes through a unitary
DFT; each resulting frequency column (a complex signal along the vertical
axis) is then analyzed with the non-stationary wavelet plan whose frequency
parameter is ``xi = |eta| * xi_scale``, where ``eta`` is the signed integer
DFT frequency index.  Real input has a Hermitian spectrum, so only the
columns ``eta = 0 .. width/2`` are computed and stored; the Nyquist column
``eta = width/2`` is its own conjugate (real-valued).

With periodic boundaries the whole map is unitary: pixel energy equals
coefficient energy (counting the conjugate half once via weights), and the
stored coefficient count expanded to the full spectrum equals the pixel
count.  The ``transpose`` flag swaps the roles of the two axes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .grid import ImageGrid, is_power_of_two
from .wavelet1d import (
    Boundary,
    CoefficientPyramid,
    analyze_batch,
    make_plan,
    synthesize_batch,
)

__all__ = ["MixedCoefficients", "forward", "inverse", "scatter_rows"]

_IMAG_RESIDUE_TOL = 1e-9


@dataclass(frozen=True)
class MixedCoefficients:
    """Per-frequency coefficient pyramids plus the transform parameters."""

    order: int
    coarse_level: int
    boundary: Boundary
    width: int  # original image width
    height: int  # original image height
    transposed: bool
    xi_scale: float
    pyramids: tuple[CoefficientPyramid, ...]  # eta = 0 .. fourier_length/2

    @property
    def fourier_length(self) -> int:
        """Length of the periodic (DFT) axis."""
        return self.height if self.transposed else self.width

    @property
    def wavelet_length(self) -> int:
        return self.width if self.transposed else self.height

    @property
    def freq_count(self) -> int:
        """Number of stored frequencies under Hermitian symmetry."""
        return self.fourier_length // 2 + 1

    @property
    def stored_count(self) -> int:
        """Stored complex coefficients (half spectrum)."""
        return sum(p.total_count for p in self.pyramids)

    @property
    def full_count(self) -> int:
        """Coefficient count after expanding the conjugate half."""
        per_column = self.pyramids[0].total_count
        return per_column * self.fourier_length

    def plan(self, eta: int):
        return make_plan(
            abs(eta) * self.xi_scale,
            self.order,
            int(np.log2(self.wavelet_length)),
            self.coarse_level,
            self.boundary,
        )

    def energy(self) -> float:
        """Total coefficient energy over the full (expanded) spectrum."""
        n = self.fourier_length
        total = 0.0
        for eta, pyr in enumerate(self.pyramids):
            weight = 1.0 if eta in (0, n // 2) else 2.0
            total += weight * pyr.energy()
        return total

    def flatten(self) -> np.ndarray:
        """Stored coefficients as one complex vector in canonical order.

        Order: eta ascending over the stored half spectrum; within each
        pyramid the detail vectors finest-first, then the approx vector.
        """
        parts = []
        for pyr in self.pyramids:
            parts.extend(pyr.details)
            parts.append(pyr.approx)
        return np.concatenate(parts)

    def with_flat(self, values: np.ndarray) -> "MixedCoefficients":
        """Rebuild pyramids (same shapes) from a canonical-order vector."""
        values = np.asarray(values, dtype=np.complex128)
        if values.size != self.stored_count:
            raise ValueError(
                f"expected {self.stored_count} coefficients, got {values.size}"
            )
        out = []
        pos = 0
        for pyr in self.pyramids:
            details = []
            for length in pyr.lengths[:-1]:
                details.append(values[pos : pos + length])
                pos += length
            approx = values[pos : pos + pyr.lengths[-1]]
            pos += pyr.lengths[-1]
            out.append(
                CoefficientPyramid(
                    approx=approx, details=tuple(details), lengths=pyr.lengths
                )
            )
        return replace(self, pyramids=tuple(out))


def _validate(image: ImageGrid, coarse_level: int, wavelet_length: int) -> int:
    log2n = int(np.log2(wavelet_length))
    if 2**log2n != wavelet_length:
        raise ValueError("wavelet-axis length must be a power of two")
    if not 0 <= coarse_level < log2n:
        raise ValueError(
            f"coarse level must satisfy 0 <= m0 < {log2n}, got {coarse_level}"
        )
    return log2n


def forward(
    image: ImageGrid,
    order: int,
    coarse_level: int,
    boundary: Boundary | str = Boundary.PERIODIC,
    transpose: bool = False,
    xi_scale: float = 1.0,
) -> MixedCoefficients:
    """Analyze an image into per-frequency wavelet pyramids."""
    boundary = Boundary(boundary)
    arr = image.pixels.T if transpose else image.pixels
    rows, cols = arr.shape
    log2n = _validate(image, coarse_level, rows)
    if not is_power_of_two(cols):
        raise ValueError("Fourier-axis length must be a power of two")
    spectrum = np.fft.rfft(arr, axis=1, norm="ortho")  # (rows, cols//2 + 1)
    plans = [
        make_plan(eta * xi_scale, order, log2n, coarse_level, boundary)
        for eta in range(cols // 2 + 1)
    ]
    pyramids = analyze_batch(np.ascontiguousarray(spectrum.T), plans)
    return MixedCoefficients(
        order=int(order),
        coarse_level=int(coarse_level),
        boundary=boundary,
        width=image.width,
        height=image.height,
        transposed=bool(transpose),
        xi_scale=float(xi_scale),
        pyramids=tuple(pyramids),
    )


def inverse(coeffs: MixedCoefficients) -> ImageGrid:
    """Invert ``forward``; asserts the reconstruction is (numerically) real."""
    n = coeffs.fourier_length
    plans = [coeffs.plan(eta) for eta in range(n // 2 + 1)]
    half = synthesize_batch(coeffs.pyramids, plans)  # (n//2+1, rows)
    rows = half.shape[1]
    spectrum = np.empty((rows, n), dtype=np.complex128)
    spectrum[:, : n // 2 + 1] = half.T
    spectrum[:, n // 2 + 1 :] = np.conj(half.T[:, n // 2 - 1 : 0 : -1])
    arr = np.fft.ifft(spectrum, axis=1, norm="ortho")
    residue = float(np.max(np.abs(arr.imag))) if arr.size else 0.0
    scale = max(1.0, float(np.max(np.abs(arr.real))))
    if residue > _IMAG_RESIDUE_TOL * scale:
        raise ValueError(
            f"reconstruction has imaginary residue {residue:.3e}; "
            "coefficients are not Hermitian-consistent"
        )
    out = arr.real
    if coeffs.transposed:
        out = out.T
    return ImageGrid.from_array(out)


def scatter_rows(coeffs: MixedCoefficients):
    """Yield one (eta, level, j, re, im, kind) row per full-spectrum
    coefficient.

    Deterministic order: signed eta ascending over the full spectrum
    (negative-frequency pyramids are the conjugates of the stored ones),
    detail levels finest-first, then the approx vector; j ascending within
    each vector.
    """
    n = coeffs.fourier_length
    log2n = int(np.log2(coeffs.wavelet_length))
    for eta in range(-(n // 2) + 1, n // 2 + 1):
        pyr = coeffs.pyramids[abs(eta)]
        conj = eta < 0
        for s, det in enumerate(pyr.details):
            level = log2n - 1 - s
            vals = np.conj(det) if conj else det
            for j, v in enumerate(vals):
                yield (eta, level, j, float(v.real), float(v.imag), "detail")
        vals = np.conj(pyr.approx) if conj else pyr.approx
        for j, v in enumerate(vals):
            yield (eta, coeffs.coarse_level, j, float(v.real), float(v.imag), "approx")
