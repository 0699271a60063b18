"""Minimal grayscale image I/O: binary PGM (P5) read/write, BMP read-only.

PGM is the interchange format (8-bit, maxval <= 255).  The BMP reader is a
convenience for uncompressed 8-bit paletted and 24-bit files; 24-bit pixels
with unequal channels are converted with the ITU-R 601 luma weights.
"""

from __future__ import annotations

import struct

import numpy as np

from .grid import ImageGrid

__all__ = ["ImageFormatError", "read_pgm", "write_pgm", "read_bmp", "read_image"]


class ImageFormatError(ValueError):
    pass


def _pgm_tokens(data: bytes):
    """Yield header tokens, skipping whitespace and # comments."""
    pos = 0
    while True:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise ImageFormatError("unexpected end of PGM header")
        yield data[start:pos], pos


def read_pgm(path) -> ImageGrid:
    with open(path, "rb") as fh:
        data = fh.read()
    tokens = _pgm_tokens(data)
    magic, _ = next(tokens)
    if magic != b"P5":
        raise ImageFormatError(f"not a binary PGM (magic {magic!r})")
    try:
        width, _ = next(tokens)
        height, _ = next(tokens)
        maxval, end = next(tokens)
        width, height, maxval = int(width), int(height), int(maxval)
    except (StopIteration, ValueError) as exc:
        raise ImageFormatError("malformed PGM header") from exc
    if not 0 < maxval <= 255:
        raise ImageFormatError(f"unsupported PGM maxval {maxval} (need <= 255)")
    pixels = data[end + 1 :]
    if len(pixels) != width * height:
        raise ImageFormatError(
            f"PGM payload is {len(pixels)} bytes, expected {width * height}"
        )
    arr = np.frombuffer(pixels, dtype=np.uint8).reshape(height, width)
    return ImageGrid.from_array(arr.astype(np.float64))


def write_pgm(image: ImageGrid, path) -> None:
    """Round to 8 bits (clipping to [0, 255]) and write binary PGM."""
    arr = np.clip(np.rint(image.pixels), 0, 255).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{image.width} {image.height}\n255\n".encode())
        fh.write(arr.tobytes())


def read_bmp(path) -> ImageGrid:
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < 54 or data[:2] != b"BM":
        raise ImageFormatError("not a BMP file")
    pixel_offset = struct.unpack_from("<I", data, 10)[0]
    header_size, width, height = struct.unpack_from("<Iii", data, 14)
    if header_size < 40:
        raise ImageFormatError(f"unsupported BMP header size {header_size}")
    planes, bpp, compression, _, _, _, clr_used = struct.unpack_from(
        "<HHIIiiI", data, 26
    )
    if compression != 0:
        raise ImageFormatError("only uncompressed BMP is supported")
    if bpp not in (8, 24):
        raise ImageFormatError(f"unsupported BMP bit depth {bpp}")
    flipped = height > 0
    height = abs(height)
    row_bytes = (width * (bpp // 8) + 3) & ~3
    out = np.empty((height, width), dtype=np.float64)
    if bpp == 8:
        count = clr_used or 256
        palette = np.frombuffer(
            data, dtype=np.uint8, count=4 * count, offset=14 + header_size
        ).reshape(-1, 4)
        b, g, r = (palette[:, i].astype(np.float64) for i in range(3))
        gray = np.where(
            (r == g) & (g == b), r, np.rint(0.299 * r + 0.587 * g + 0.114 * b)
        )
        for row in range(height):
            off = pixel_offset + row * row_bytes
            idx = np.frombuffer(data, dtype=np.uint8, count=width, offset=off)
            out[row] = gray[idx]
    else:
        for row in range(height):
            off = pixel_offset + row * row_bytes
            bgr = np.frombuffer(
                data, dtype=np.uint8, count=3 * width, offset=off
            ).reshape(width, 3).astype(np.float64)
            eq = (bgr[:, 0] == bgr[:, 1]) & (bgr[:, 1] == bgr[:, 2])
            luma = np.rint(0.114 * bgr[:, 0] + 0.587 * bgr[:, 1] + 0.299 * bgr[:, 2])
            out[row] = np.where(eq, bgr[:, 0], luma)
    if flipped:
        out = out[::-1]
    return ImageGrid.from_array(out)


def read_image(path) -> ImageGrid:
    """Dispatch on magic bytes: PGM (P5) or BMP."""
    with open(path, "rb") as fh:
        magic = fh.read(2)
    if magic == b"P5":
        return read_pgm(path)
    if magic == b"BM":
        return read_bmp(path)
    raise ImageFormatError(f"unrecognized image format (magic {magic!r})")
