"""Command-line front end.

Exit codes: 0 success, 1 runtime failure (I/O, corrupt data), 2 usage error
(bad flags, unsupported input shapes).  All output is deterministic given
the flags and input bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import baseline2d, codec, synth, transform2d
from .entropy import EntropyDecodeError
from .filters import MAX_ORDER, make_filter_pair
from .grid import InvalidImageError
from .imageio import ImageFormatError, read_image, write_pgm
from .wavelet1d import Boundary


def _add_transform_args(p, with_bits=True, with_boundary=False):
    p.add_argument("--transform", choices=["ph", "db"], default="ph")
    p.add_argument("--order", type=int, default=2, metavar="N")
    p.add_argument("--coarse-level", type=int, default=3, metavar="M0")
    if with_bits:
        p.add_argument("--bits", type=int, default=9)
    if with_boundary:
        p.add_argument(
            "--boundary", choices=["periodic", "expansive"], default="periodic"
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phwave",
        description="Frequency-adaptive wavelet image toolkit: filter dumps, "
        "compression, metrics and coefficient scatters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("filters", help="dump one analysis filter pair as CSV")
    p.add_argument("--order", type=int, required=True, metavar="N")
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--level", type=int, required=True, metavar="K")
    p.add_argument("-o", "--output", default=None, help="file instead of stdout")

    p = sub.add_parser("compress", help="compress a PGM/BMP image")
    p.add_argument("input")
    p.add_argument("output")
    _add_transform_args(p)
    p.add_argument("--transpose", action="store_true")

    p = sub.add_parser("decompress", help="decode a container to PGM")
    p.add_argument("input")
    p.add_argument("output")

    p = sub.add_parser("compare", help="compress with both transforms, report table")
    p.add_argument("input")
    p.add_argument("--order", type=int, default=2, metavar="N")
    p.add_argument("--coarse-level", type=int, default=3, metavar="M0")
    p.add_argument("--bits", type=int, default=9)
    p.add_argument("--csv", default=None, help="also write the table as CSV")
    p.add_argument("--json", default=None, help="also write the table as JSON")

    p = sub.add_parser("scatter", help="export coefficient scatter as CSV")
    p.add_argument("input")
    p.add_argument("output")
    _add_transform_args(p, with_bits=False, with_boundary=True)

    p = sub.add_parser("synth", help="generate a synthetic test image")
    p.add_argument("kind", choices=["natural", "starfield"])
    p.add_argument("output")
    p.add_argument("--size", type=int, default=128)
    p.add_argument("--seed", type=int, default=7)
    return parser


def _fmt(value: float) -> str:
    return repr(float(value))


def cmd_filters(args) -> int:
    if not 1 <= args.order <= MAX_ORDER:
        raise UsageError(f"--order must be in 1..{MAX_ORDER}")
    if args.xi < 0:
        raise UsageError("--xi must be >= 0")
    if args.level < 0:
        raise UsageError("--level must be >= 0")
    pair = make_filter_pair(args.order, args.xi, args.level)
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["N", "xi", "k", "tap_index", "h", "g"])
        for j, (hv, gv) in enumerate(zip(pair.h, pair.g)):
            writer.writerow([pair.order, _fmt(pair.xi), pair.k, j, _fmt(hv), _fmt(gv)])
    finally:
        if args.output:
            out.close()
    return 0


def cmd_compress(args) -> int:
    image = read_image(args.input)
    blob = codec.compress(
        image,
        transform=args.transform,
        order=args.order,
        coarse_level=args.coarse_level,
        bits=args.bits,
        transpose=args.transpose,
    )
    with open(args.output, "wb") as fh:
        fh.write(blob)
    rec = codec.decompress(blob)
    metrics = codec.measure(image, rec, blob)
    print(
        f"{args.transform} order={args.order} m0={args.coarse_level} "
        f"bits={args.bits}: {len(blob)} bytes, ratio {metrics.compression_ratio:.4f}, "
        f"psnr {metrics.psnr:.4f} dB"
    )
    return 0


def cmd_decompress(args) -> int:
    with open(args.input, "rb") as fh:
        blob = fh.read()
    write_pgm(codec.decompress(blob), args.output)
    return 0


def cmd_compare(args) -> int:
    image = read_image(args.input)
    rows = []
    for transform in ("ph", "db"):
        blob = codec.compress(
            image,
            transform=transform,
            order=args.order,
            coarse_level=args.coarse_level,
            bits=args.bits,
        )
        metrics = codec.measure(image, codec.decompress(blob), blob)
        row = {"transform": transform, "bytes": len(blob)}
        row.update(metrics.to_dict())
        rows.append(row)
    header = list(rows[0].keys())
    widths = [max(len(h), 12) for h in header]
    print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for row in rows:
        cells = [
            f"{v:.4f}" if isinstance(v, float) else str(v) for v in row.values()
        ]
        print("  ".join(c.ljust(w) for c, w in zip(cells, widths)))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=header, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
            fh.write("\n")
    return 0


def cmd_scatter(args) -> int:
    image = read_image(args.input)
    if args.transform == "db":
        if args.boundary != "periodic":
            raise UsageError("the db transform supports only periodic boundaries")
        rows = baseline2d.scatter_rows(
            baseline2d.db_forward(image, args.order, args.coarse_level)
        )
    else:
        coeffs = transform2d.forward(
            image, args.order, args.coarse_level, boundary=Boundary(args.boundary)
        )
        rows = transform2d.scatter_rows(coeffs)
    count = 0
    with open(args.output, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["eta", "level", "j", "re", "im", "kind"])
        for eta, level, j, re, im, kind in rows:
            writer.writerow([eta, level, j, _fmt(re), _fmt(im), kind])
            count += 1
    print(f"{count} coefficients written to {args.output}")
    return 0


def cmd_synth(args) -> int:
    if args.size < 2 or args.size & (args.size - 1):
        raise UsageError("--size must be a power of two >= 2")
    maker = synth.natural_image if args.kind == "natural" else synth.star_field
    write_pgm(maker(args.size, args.seed), args.output)
    return 0


class UsageError(Exception):
    pass


_COMMANDS = {
    "filters": cmd_filters,
    "compress": cmd_compress,
    "decompress": cmd_decompress,
    "compare": cmd_compare,
    "scatter": cmd_scatter,
    "synth": cmd_synth,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (codec.ContainerError, EntropyDecodeError, ImageFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (UsageError, InvalidImageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
