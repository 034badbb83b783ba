"""Command-line front end for :mod:`tensorgrand.sim`.

Example::

    tensorgrand-sim --code crc:0x15:15 --dims 3 --points 6,7,8 --point-kind snr \\
        --out fig1_cubic.csv
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

from .component_code import parse_code_spec
from .sim import SimConfig, sweep, write_csv, write_json
from .tensor import design_space, design_space_csv
from .turbo import DecoderConfig

EXIT_CONFIG = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _points(text: str) -> list[float]:
    try:
        pts = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad point list {text!r}") from None
    if not pts:
        raise argparse.ArgumentTypeError("empty point list")
    return pts


def _code(text: str) -> str:
    try:
        parse_code_spec(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return text


def _positive(cast):
    def parse(text):
        try:
            v = cast(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad value {text!r}") from None
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return v
    return parse


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tensorgrand-sim",
                description="Monte-Carlo BLER/BER of tensor product codes decoded with SOGRAND.")
    p.add_argument("--code", type=_code, help="component code: crc:<koopman hex>:<n> or ebch:<n>:<k>")
    p.add_argument("--dims", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--alpha", type=_positive(float), help="extrinsic weight (default 0.5 square, 0.7 cubic)")
    p.add_argument("--max-iters", type=_positive(float), help="abandonment threshold in iterations")
    p.add_argument("--list-size", type=_positive(int), default=4)
    p.add_argument("--max-queries", type=_positive(int), help="per-component query budget")
    p.add_argument("--early-stop", type=float, default=1e-5,
                   help="stop a component list once P(not in list) drops below this")
    p.add_argument("--one-line", action="store_true", help="use the intercept-shifted ORBGRAND schedule")
    p.add_argument("--points", type=_points, help="comma-separated operating points in dB")
    p.add_argument("--point-kind", choices=("snr", "ebn0"), default="snr")
    p.add_argument("--min-block-errors", type=_positive(int), default=100)
    p.add_argument("--max-blocks", type=_positive(int), default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive(int), default=1)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--json", help="JSON output path")
    p.add_argument("--design-space", metavar="PATH",
                   help="write the (l, n, k, length, rate) design-space table as CSV and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _check_writable(path: str) -> str | None:
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        return f"output directory does not exist: {directory}"
    if not os.access(directory, os.W_OK) or (os.path.exists(path) and not os.access(path, os.W_OK)):
        return f"output path not writable: {path}"
    return None


def format_table(result) -> str:
    head = f"{'point':>7} {'blocks':>8} {'blk err':>8} {'BLER':>10} {'BER':>10} {'raw BER':>9} {'iters':>6}"
    lines = [str(result.config.code), head]
    for p in result.points:
        lines.append(f"{p.point_db:7.2f} {p.blocks:8d} {p.block_errors:8d} {p.bler:10.3e} "
                     f"{p.ber:10.3e} {p.raw_ber:9.4f} {p.avg_half_iters:6.2f}")
    for point, msg in result.errors.items():
        lines.append(f"{point:7.2f} failed: {msg}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")

    if args.design_space:
        if (msg := _check_writable(args.design_space)):
            print(f"error: {msg}", file=sys.stderr)
            return EXIT_IO
        with open(args.design_space, "w") as fh:
            fh.write(design_space_csv(design_space()))
        return 0

    if args.code is None:
        parser.error("the following argument is required: --code")
    if args.points is None:
        parser.error("the following argument is required: --points")
    for path in (args.out, args.json):
        if path and (msg := _check_writable(path)):
            print(f"error: {msg}", file=sys.stderr)
            return EXIT_IO

    try:
        decoder = DecoderConfig.for_dims(args.dims, alpha=args.alpha, thres=args.max_iters,
                                         list_size=args.list_size, max_queries=args.max_queries,
                                         early_stop=args.early_stop, one_line=args.one_line)
        cfg = SimConfig(code_spec=args.code, dims=args.dims, points=args.points,
                        point_kind=args.point_kind, decoder=decoder,
                        min_block_errors=args.min_block_errors, max_blocks=args.max_blocks,
                        seed=args.seed, workers=args.workers)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    result = sweep(cfg)
    if args.out:
        write_csv(result, args.out)
    if args.json:
        write_json(result, args.json)
    print(format_table(result))
    return 1 if result.errors else 0


if __name__ == "__main__":
    sys.exit(main())
