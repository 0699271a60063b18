"""Lossy image codec: uniform quantizer + entropy layer + container.

Complex mixed-transform coefficients are split into real and imaginary
planes, each quantized with its own global amplitude, run-length/Huffman
coded, and wrapped in the little-endian ``PHW1`` container described in
FORMAT.md.  The Daubechies baseline goes through the identical pipeline
with a single plane, so rate/distortion comparisons between the two isolate
the transform.

The quantizer is a midtread uniform quantizer: step = 2A / (2**bits - 1),
symbol = round(x / step).  A is the exact maximum absolute value of the
plane, so symbols never exceed 2**(bits-1) in magnitude; an all-zero plane
is stored with amplitude 0 and decodes to zeros.
"""

from __future__ import annotations

import math
import struct
import zlib
from dataclasses import dataclass

import numpy as np

from . import baseline2d, transform2d
from .entropy import EntropyDecodeError, decode_symbols, encode_symbols
from .grid import ImageGrid, is_power_of_two
from .wavelet1d import Boundary, CoefficientPyramid, make_plan

__all__ = [
    "QuantizerConfig",
    "CoefficientStats",
    "Metrics",
    "ContainerError",
    "quantize",
    "dequantize",
    "compress",
    "decompress",
    "measure",
    "mse",
    "psnr",
    "MAGIC",
]

MAGIC = b"PHW1"
VERSION = 1
_TRANSFORM_CODES = {"ph": 0, "db": 1}
_TRANSFORM_NAMES = {v: k for k, v in _TRANSFORM_CODES.items()}
_HEADER = struct.Struct("<4sBBBBBBBBIIddd")
_PLANE_PREFIX = struct.Struct("<II")
_MAX_DIM = 1 << 15


class ContainerError(ValueError):
    """Container fails structural or consistency validation."""


@dataclass(frozen=True)
class QuantizerConfig:
    """Midtread quantizer: ``bits`` in [2, 16], amplitude = max |x|."""

    bits: int
    amplitude: float

    def __post_init__(self):
        if not 2 <= self.bits <= 16:
            raise ValueError(f"bits must be in [2, 16], got {self.bits}")
        if not math.isfinite(self.amplitude) or self.amplitude < 0:
            raise ValueError(f"amplitude must be finite and >= 0, got {self.amplitude}")

    @property
    def step(self) -> float:
        return 2.0 * self.amplitude / (2**self.bits - 1)

    @property
    def max_symbol(self) -> int:
        return 2 ** (self.bits - 1)


def quantize(values, cfg: QuantizerConfig) -> np.ndarray:
    """Map reals to integer symbols; |x| beyond the amplitude is an error."""
    x = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise ValueError("cannot quantize non-finite values")
    if x.size and float(np.max(np.abs(x))) > cfg.amplitude * (1.0 + 1e-12):
        raise ValueError("input exceeds the configured amplitude")
    if cfg.amplitude == 0.0:
        return np.zeros(x.shape, dtype=np.int64)
    return np.rint(x / cfg.step).astype(np.int64)


def dequantize(symbols, cfg: QuantizerConfig) -> np.ndarray:
    """Reconstruct symbol * step; symbols outside the bit range are an error."""
    q = np.asarray(symbols, dtype=np.int64)
    if q.size and int(np.max(np.abs(q))) > cfg.max_symbol:
        raise ValueError(
            f"symbol magnitude exceeds {cfg.max_symbol} for {cfg.bits}-bit config"
        )
    if cfg.amplitude == 0.0:
        return np.zeros(q.shape, dtype=np.float64)
    return q.astype(np.float64) * cfg.step


def _ph_template(
    order: int,
    coarse_level: int,
    width: int,
    height: int,
    transposed: bool,
    xi_scale: float,
) -> transform2d.MixedCoefficients:
    """Zero-filled coefficient object with the right shapes for decoding."""
    wavelet_len = width if transposed else height
    fourier_len = height if transposed else width
    plan = make_plan(0.0, order, int(np.log2(wavelet_len)), coarse_level)
    lengths = tuple(plan.output_lengths())
    zero = CoefficientPyramid(
        approx=np.zeros(lengths[-1], dtype=np.complex128),
        details=tuple(np.zeros(n, dtype=np.complex128) for n in lengths[:-1]),
        lengths=lengths,
    )
    return transform2d.MixedCoefficients(
        order=order,
        coarse_level=coarse_level,
        boundary=Boundary.PERIODIC,
        width=width,
        height=height,
        transposed=transposed,
        xi_scale=xi_scale,
        pyramids=tuple([zero] * (fourier_len // 2 + 1)),
    )


def _db_template(order, coarse_level, width, height) -> baseline2d.Db2dCoefficients:
    stages = int(np.log2(min(width, height))) - coarse_level
    levels = []
    w, h = width, height
    for _ in range(stages):
        w //= 2
        h //= 2
        band = np.zeros((h, w))
        levels.append(baseline2d.DbLevel(lh=band, hl=band, hh=band))
    return baseline2d.Db2dCoefficients(
        order=order,
        coarse_level=coarse_level,
        width=width,
        height=height,
        levels=tuple(levels),
        ll=np.zeros((h, w)),
    )


def _encode_plane(values: np.ndarray, bits: int):
    amplitude = float(np.max(np.abs(values))) if values.size else 0.0
    cfg = QuantizerConfig(bits=bits, amplitude=amplitude)
    blob = encode_symbols(quantize(values, cfg))
    return amplitude, blob


def compress(
    image: ImageGrid,
    transform: str = "ph",
    order: int = 2,
    coarse_level: int = 3,
    bits: int = 9,
    transpose: bool = False,
    xi_scale: float = 1.0,
) -> bytes:
    """Transform, quantize and entropy-code an image into a container."""
    if transform not in _TRANSFORM_CODES:
        raise ValueError(f"transform must be 'ph' or 'db', got {transform!r}")
    if transform == "ph":
        coeffs = transform2d.forward(
            image, order, coarse_level, transpose=transpose, xi_scale=xi_scale
        )
        vec = coeffs.flatten()
        planes = [vec.real, vec.imag]
    else:
        vec = baseline2d.db_forward(image, order, coarse_level).flatten()
        planes = [vec]
    encoded = [_encode_plane(p, bits) for p in planes]
    amps = [a for a, _ in encoded] + [0.0] * (2 - len(encoded))
    header = _HEADER.pack(
        MAGIC,
        VERSION,
        _TRANSFORM_CODES[transform],
        int(order),
        int(coarse_level),
        int(bits),
        1 if transpose else 0,
        len(encoded),
        0,
        image.width,
        image.height,
        float(xi_scale),
        amps[0],
        amps[1],
    )
    body = bytearray(header)
    for _, blob in encoded:
        body += _PLANE_PREFIX.pack(len(blob), zlib.crc32(blob))
        body += blob
    return bytes(body)


def _parse_header(data: bytes):
    if len(data) < _HEADER.size:
        raise ContainerError("container shorter than its header")
    (
        magic,
        version,
        tcode,
        order,
        coarse_level,
        bits,
        flags,
        plane_count,
        _reserved,
        width,
        height,
        xi_scale,
        amp0,
        amp1,
    ) = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise ContainerError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ContainerError(f"unsupported container version {version}")
    if tcode not in _TRANSFORM_NAMES:
        raise ContainerError(f"unknown transform code {tcode}")
    transform = _TRANSFORM_NAMES[tcode]
    if plane_count != (2 if transform == "ph" else 1):
        raise ContainerError(
            f"{transform} container must carry {2 if transform == 'ph' else 1} "
            f"planes, header says {plane_count}"
        )
    if not 2 <= bits <= 16:
        raise ContainerError(f"bits {bits} outside [2, 16]")
    if not 1 <= order <= 12:
        raise ContainerError(f"order {order} outside 1..12")
    for name, dim in (("width", width), ("height", height)):
        if not (is_power_of_two(dim) and 2 <= dim <= _MAX_DIM):
            raise ContainerError(f"{name} {dim} is not a supported power of two")
    transposed = bool(flags & 1)
    wavelet_len = width if (transform == "ph" and transposed) else height
    axis_log2 = int(np.log2(min(width, height) if transform == "db" else wavelet_len))
    if not 0 <= coarse_level < axis_log2:
        raise ContainerError(f"coarse level {coarse_level} invalid for {width}x{height}")
    if not (math.isfinite(xi_scale) and xi_scale > 0):
        raise ContainerError(f"bad xi scale {xi_scale}")
    for amp in (amp0, amp1):
        if not (math.isfinite(amp) and amp >= 0):
            raise ContainerError(f"bad amplitude {amp}")
    return {
        "transform": transform,
        "order": order,
        "coarse_level": coarse_level,
        "bits": bits,
        "transposed": transposed,
        "plane_count": plane_count,
        "width": width,
        "height": height,
        "xi_scale": xi_scale,
        "amplitudes": (amp0, amp1),
    }


def _parse_planes(data: bytes, plane_count: int) -> list[bytes]:
    pos = _HEADER.size
    blobs = []
    for i in range(plane_count):
        if pos + _PLANE_PREFIX.size > len(data):
            raise ContainerError(f"plane {i} prefix missing")
        length, crc = _PLANE_PREFIX.unpack_from(data, pos)
        pos += _PLANE_PREFIX.size
        blob = data[pos : pos + length]
        if len(blob) != length:
            raise ContainerError(f"plane {i} truncated")
        if zlib.crc32(blob) != crc:
            raise ContainerError(f"plane {i} fails its checksum")
        blobs.append(blob)
        pos += length
    if pos != len(data):
        raise ContainerError(f"{len(data) - pos} trailing bytes after last plane")
    return blobs


def _decode_planes(data: bytes):
    head = _parse_header(data)
    blobs = _parse_planes(data, head["plane_count"])
    planes = []
    for i, blob in enumerate(blobs):
        try:
            symbols = decode_symbols(blob)
        except EntropyDecodeError as exc:
            raise ContainerError(f"plane {i}: {exc}") from exc
        cfg = QuantizerConfig(bits=head["bits"], amplitude=head["amplitudes"][i])
        try:
            planes.append((symbols, dequantize(symbols, cfg)))
        except ValueError as exc:
            raise ContainerError(f"plane {i}: {exc}") from exc
    return head, planes


def decompress(data: bytes) -> ImageGrid:
    """Decode a container back to an image; deterministic and strict."""
    head, planes = _decode_planes(data)
    if head["transform"] == "ph":
        template = _ph_template(
            head["order"],
            head["coarse_level"],
            head["width"],
            head["height"],
            head["transposed"],
            head["xi_scale"],
        )
        expected = template.stored_count
        for i, (symbols, _) in enumerate(planes):
            if symbols.size != expected:
                raise ContainerError(
                    f"plane {i} holds {symbols.size} symbols, expected {expected}"
                )
        coeffs = template.with_flat(planes[0][1] + 1j * planes[1][1])
        return transform2d.inverse(coeffs)
    template = _db_template(
        head["order"], head["coarse_level"], head["width"], head["height"]
    )
    symbols, values = planes[0]
    if symbols.size != template.total_count:
        raise ContainerError(
            f"plane 0 holds {symbols.size} symbols, expected {template.total_count}"
        )
    return baseline2d.db_inverse(template.with_flat(values))


def mse(a: ImageGrid, b: ImageGrid) -> float:
    if (a.width, a.height) != (b.width, b.height):
        raise ValueError("images must have identical dimensions")
    return float(np.mean((a.pixels - b.pixels) ** 2))


def psnr(a: ImageGrid, b: ImageGrid, peak: float = 255.0) -> float:
    """10*log10(peak^2 / MSE); +inf for identical images."""
    err = mse(a, b)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / err)


@dataclass(frozen=True)
class CoefficientStats:
    max_abs: float
    p50: float
    p90: float
    p99: float
    zero_fraction: float


@dataclass(frozen=True)
class Metrics:
    psnr: float
    compression_ratio: float
    stats: CoefficientStats

    def to_dict(self) -> dict:
        return {
            "psnr_db": self.psnr,
            "compression_ratio": self.compression_ratio,
            "max_abs": self.stats.max_abs,
            "p50": self.stats.p50,
            "p90": self.stats.p90,
            "p99": self.stats.p99,
            "zero_fraction": self.stats.zero_fraction,
        }


def measure(original: ImageGrid, reconstructed: ImageGrid, container: bytes) -> Metrics:
    """PSNR, compression ratio and quantized-coefficient statistics.

    The ratio denominator is the complete container (header, tables and
    payload); statistics are over the dequantized components of every plane.
    """
    head, planes = _decode_planes(data=container)
    if (head["width"], head["height"]) != (original.width, original.height):
        raise ValueError("container dimensions do not match the original image")
    symbols = np.concatenate([s for s, _ in planes])
    magnitudes = np.abs(np.concatenate([v for _, v in planes]))
    raw_bits = 8 * original.width * original.height
    stats = CoefficientStats(
        max_abs=float(magnitudes.max()) if magnitudes.size else 0.0,
        p50=float(np.percentile(magnitudes, 50)) if magnitudes.size else 0.0,
        p90=float(np.percentile(magnitudes, 90)) if magnitudes.size else 0.0,
        p99=float(np.percentile(magnitudes, 99)) if magnitudes.size else 0.0,
        zero_fraction=float(np.mean(symbols == 0)) if symbols.size else 1.0,
    )
    return Metrics(
        psnr=psnr(original, reconstructed),
        compression_ratio=raw_bits / (8 * len(container)),
        stats=stats,
    )
