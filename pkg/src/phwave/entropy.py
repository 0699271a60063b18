"""Lossless symbol coding: zero-run tokens + static canonical Huffman.

The quantizer output is tokenized into maximal zero runs and nonzero values.
Each token maps to a small fixed alphabet of magnitude classes (the bit
length of the run length or of the absolute value); the class id is Huffman
coded and the remainder is written as raw extra bits.  The canonical code
table (one length byte per alphabet symbol) travels with the payload, so a
blob is decodable on its own.

Blob layout, little-endian:

    u32  symbol_count        number of quantizer symbols encoded
    u8   lengths[49]         canonical Huffman code lengths (0 = unused)
    u32  bit_count           exact number of payload bits
    u8[] payload             bit_count bits, MSB-first, zero-padded to a byte

Alphabet ids 0..31 are zero-run classes (run bit length 1..32); ids 32..48
are value classes (|v| bit length 1..17).  A zero-run token's extra bits are
the run length minus its leading power of two; a value token writes one sign
bit then the magnitude remainder.  Encoding is fully deterministic: ties in
the Huffman build are broken by insertion order.
"""

from __future__ import annotations

import heapq
import struct

import numpy as np

ALPHABET = 49
_RUN_CLASSES = 32
_MAX_VALUE = (1 << 17) - 1
_HEADER = struct.Struct("<I49sI")


class EntropyDecodeError(ValueError):
    """Bitstream is truncated, corrupt, or inconsistent with its header."""


def _tokens(symbols: np.ndarray):
    """Yield (alphabet_id, extra_value, extra_bits) per token."""
    n = symbols.size
    nz = np.flatnonzero(symbols)
    pos = 0
    for idx in nz:
        idx = int(idx)
        if idx > pos:
            run = idx - pos
            c = run.bit_length()
            yield c - 1, run - (1 << (c - 1)), c - 1
        v = int(symbols[idx])
        mag = abs(v)
        if mag > _MAX_VALUE:
            raise ValueError(f"symbol magnitude {mag} exceeds the coder range")
        s = mag.bit_length()
        extra = ((1 if v < 0 else 0) << (s - 1)) | (mag - (1 << (s - 1)))
        yield _RUN_CLASSES - 1 + s, extra, s
        pos = idx + 1
    if pos < n:
        run = n - pos
        c = run.bit_length()
        yield c - 1, run - (1 << (c - 1)), c - 1


def _code_lengths(freqs: np.ndarray) -> list[int]:
    """Huffman code lengths with deterministic tie-breaking."""
    alive = [i for i in range(ALPHABET) if freqs[i] > 0]
    if not alive:
        return [0] * ALPHABET
    if len(alive) == 1:
        lengths = [0] * ALPHABET
        lengths[alive[0]] = 1
        return lengths
    heap = []
    serial = 0
    for i in alive:
        heap.append((int(freqs[i]), serial, (i,)))
        serial += 1
    heapq.heapify(heap)
    depth = {i: 0 for i in alive}
    while len(heap) > 1:
        fa, _, ga = heapq.heappop(heap)
        fb, _, gb = heapq.heappop(heap)
        for i in ga + gb:
            depth[i] += 1
        heapq.heappush(heap, (fa + fb, serial, ga + gb))
        serial += 1
    lengths = [0] * ALPHABET
    for i, d in depth.items():
        lengths[i] = d
    return lengths


def _canonical_codes(lengths) -> dict[int, tuple[int, int]]:
    """Map alphabet id -> (code, length) in canonical order."""
    order = sorted(i for i in range(ALPHABET) if lengths[i] > 0)
    order.sort(key=lambda i: (lengths[i], i))
    codes = {}
    code = 0
    prev = 0
    for i in order:
        code <<= lengths[i] - prev
        prev = lengths[i]
        codes[i] = (code, lengths[i])
        code += 1
    return codes


class _BitWriter:
    def __init__(self):
        self.out = bytearray()
        self.acc = 0
        self.nbits = 0
        self.total = 0

    def put(self, value: int, nbits: int):
        if nbits == 0:
            return
        self.acc = (self.acc << nbits) | value
        self.nbits += nbits
        self.total += nbits
        while self.nbits >= 8:
            self.nbits -= 8
            self.out.append((self.acc >> self.nbits) & 0xFF)
            self.acc &= (1 << self.nbits) - 1

    def finish(self) -> bytes:
        if self.nbits:
            self.out.append((self.acc << (8 - self.nbits)) & 0xFF)
            self.acc = 0
            self.nbits = 0
        return bytes(self.out)


def encode_symbols(symbols) -> bytes:
    """Encode an integer symbol stream into a self-contained blob."""
    symbols = np.asarray(symbols, dtype=np.int64)
    if symbols.ndim != 1:
        raise ValueError("symbol stream must be one-dimensional")
    toks = list(_tokens(symbols))
    freqs = np.zeros(ALPHABET, dtype=np.int64)
    for tid, _, _ in toks:
        freqs[tid] += 1
    lengths = _code_lengths(freqs)
    codes = _canonical_codes(lengths)
    w = _BitWriter()
    for tid, extra, nbits in toks:
        code, clen = codes[tid]
        w.put(code, clen)
        w.put(extra, nbits)
    payload = w.finish()
    header = _HEADER.pack(symbols.size, bytes(lengths), w.total)
    return header + payload


def _check_kraft(lengths) -> None:
    total = 0
    for l in lengths:
        if l > 0:
            total += 1 << (64 - l) if l <= 64 else 0
    if any(l > 64 for l in lengths) or total > (1 << 64):
        raise EntropyDecodeError("code lengths do not form a prefix code")


def decode_symbols(blob: bytes) -> np.ndarray:
    """Invert ``encode_symbols``; strict about every header field."""
    if len(blob) < _HEADER.size:
        raise EntropyDecodeError("blob shorter than its fixed header")
    count, length_bytes, bit_count = _HEADER.unpack_from(blob)
    payload = blob[_HEADER.size :]
    if len(payload) != (bit_count + 7) // 8:
        raise EntropyDecodeError(
            f"payload is {len(payload)} bytes but {bit_count} bits declared"
        )
    lengths = list(length_bytes)
    _check_kraft(lengths)
    # canonical decode tables per code length
    order = sorted(
        (i for i in range(ALPHABET) if lengths[i] > 0),
        key=lambda i: (lengths[i], i),
    )
    first_code = {}
    first_idx = {}
    counts = {}
    code = 0
    prev = 0
    for pos, i in enumerate(order):
        code <<= lengths[i] - prev
        prev = lengths[i]
        l = lengths[i]
        if l not in first_code:
            first_code[l] = code
            first_idx[l] = pos
            counts[l] = 0
        counts[l] += 1
        code += 1
    max_len = prev

    out = np.zeros(count, dtype=np.int64)
    filled = 0
    bitpos = 0

    def take(nbits: int) -> int:
        nonlocal bitpos
        if bitpos + nbits > bit_count:
            raise EntropyDecodeError("bitstream truncated")
        val = 0
        for _ in range(nbits):
            val = (val << 1) | ((payload[bitpos >> 3] >> (7 - (bitpos & 7))) & 1)
            bitpos += 1
        return val

    while filled < count:
        code = 0
        l = 0
        while True:
            code = (code << 1) | take(1)
            l += 1
            if l in first_code and code - first_code[l] < counts[l]:
                tid = order[first_idx[l] + (code - first_code[l])]
                break
            if l > max_len:
                raise EntropyDecodeError("invalid Huffman code in stream")
        if tid < _RUN_CLASSES:
            c = tid + 1
            run = (1 << (c - 1)) | take(c - 1)
            if filled + run > count:
                raise EntropyDecodeError("zero run overflows the symbol count")
            filled += run
        else:
            s = tid - _RUN_CLASSES + 1
            extra = take(s)
            sign = extra >> (s - 1)
            mag = (1 << (s - 1)) | (extra & ((1 << (s - 1)) - 1))
            out[filled] = -mag if sign else mag
            filled += 1
    if bitpos != bit_count:
        raise EntropyDecodeError(
            f"{bit_count - bitpos} unread payload bits after the last symbol"
        )
    return out
