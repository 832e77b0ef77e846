"""Command line: train, encode, decode, psnr, pyramid, bench.

Exit codes: 0 success, 1 usage error, 2 data/format error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench
from .codec import compression_ratio, decode, deserialize, encode, serialize
from .errors import ConfigurationError, DataError
from .imageio import read_pgm, write_pgm
from .metrics import format_psnr, psnr
from .pyramid import build_pyramid, select_seed_level
from .vqcore import BlockGeometry, Codebook, TrainingReport, init_pyramid, init_random, lbg_train, tile_image

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CONFIG = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _geometry(text):
    try:
        return BlockGeometry.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def save_codebook(path, codebook: Codebook) -> None:
    """Write a trained codebook (real-valued codewords plus training report) as ``.npz``."""
    rep = codebook.report
    extra = {}
    if rep is not None:
        extra = dict(
            iterations=rep.iterations,
            distortion_trace=np.asarray(rep.distortion_trace),
            converged=rep.converged,
            epsilon=rep.epsilon,
            empty_cell_repairs=rep.empty_cell_repairs,
        )
    with open(path, "wb") as f:
        np.savez(f, codewords=codebook.codewords,
                 geometry=np.array([codebook.geometry.block_w, codebook.geometry.block_h]), **extra)


def load_codebook(path) -> Codebook:
    try:
        with np.load(path) as z:
            bw, bh = (int(v) for v in z["geometry"])
            report = None
            if "iterations" in z:
                report = TrainingReport(int(z["iterations"]), [float(v) for v in z["distortion_trace"]],
                                        bool(z["converged"]), float(z["epsilon"]), int(z["empty_cell_repairs"]))
            return Codebook(BlockGeometry(bw, bh), z["codewords"], report)
    except (OSError, KeyError, ValueError) as e:
        if isinstance(e, DataError):
            raise
        raise DataError(f"cannot read codebook file {path}: {e}") from e


def _train(image, args) -> Codebook:
    geometry = args.block
    ts = tile_image(image, geometry)
    if args.init == "pyramid":
        initial = init_pyramid(image, geometry, args.codebook_size)
    else:
        initial = init_random(ts, args.codebook_size, args.seed)
    codebook, _ = lbg_train(ts, initial, args.epsilon, args.max_iters)
    return codebook


def _add_training_flags(p, required: bool):
    p.add_argument("--codebook-size", "-n", type=int, required=required)
    p.add_argument("--block", type=_geometry, required=required, help="block size WxH, e.g. 4x4")
    p.add_argument("--init", choices=("random", "pyramid"), default="pyramid")
    p.add_argument("--seed", type=int, default=0, help="seed for --init random")
    p.add_argument("--epsilon", type=float, default=0.001)
    p.add_argument("--max-iters", type=int, default=100)


def cmd_train(args):
    image = read_pgm(args.image)
    codebook = _train(image, args)
    save_codebook(args.out, codebook)
    rep = codebook.report
    print(f"iterations={rep.iterations} distortion={rep.final_distortion:.6f} "
          f"converged={rep.converged} repairs={rep.empty_cell_repairs}")


def cmd_encode(args):
    image = read_pgm(args.image)
    if args.codebook:
        codebook = load_codebook(args.codebook)
    elif args.codebook_size and args.block:
        codebook = _train(image, args)
    else:
        raise UsageError("encode needs --codebook FILE or --codebook-size and --block to train inline")
    compressed = encode(image, codebook)
    blob = serialize(compressed)
    with open(args.out, "wb") as f:
        f.write(blob)
    print(f"bytes={len(blob)} ratio={compression_ratio(compressed):.3f}")


def cmd_decode(args):
    with open(args.file, "rb") as f:
        image = decode(deserialize(f.read()))
    write_pgm(args.out, image)


def cmd_psnr(args):
    q = psnr(read_pgm(args.a), read_pgm(args.b))
    print(f"mse={q.mse:.4f} psnr_db={format_psnr(q.psnr_db)}")


def cmd_pyramid(args):
    image = read_pgm(args.image)
    pyr = build_pyramid(image)
    for level, (w, h) in enumerate(pyr.sizes):
        print(f"level {level}: {w}x{h}")
    if args.codebook_size and args.block:
        level = select_seed_level(image.width, image.height, args.block.block_w, args.block.block_h, args.codebook_size)
        w, h = pyr.sizes[level]
        print(f"seed level for N={args.codebook_size} block={args.block}: {level} ({w}x{h})")


def cmd_bench(args):
    paths = [p for p in (args.images or "").split(",") if p]
    images = bench.load_images(paths, synthetic=args.synthetic or not paths)
    cfg = bench.BenchConfig(seeds=tuple(range(args.seeds)), epsilon=args.epsilon, max_iters=args.max_iters)
    rows = bench.run_rows(images, cfg, workers=args.workers)
    with open(args.out, "w", newline="") as f:
        f.write(bench.rows_to_csv(rows, timing=not args.no_timing))
    if args.table:
        print(bench.summary_table(rows))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pyrvq", description="Grayscale VQ codec with pyramid-initialized LBG training.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train", help="train a codebook on a PGM image")
    p.add_argument("image")
    _add_training_flags(p, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("encode", help="encode a PGM image to .pvq")
    p.add_argument("image")
    p.add_argument("--codebook", help="codebook file written by `train`")
    _add_training_flags(p, required=False)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a .pvq file to PGM")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("psnr", help="PSNR between two PGM images")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_psnr)

    p = sub.add_parser("pyramid", help="print pyramid level sizes and the seed level")
    p.add_argument("image")
    p.add_argument("--codebook-size", "-n", type=int)
    p.add_argument("--block", type=_geometry)
    p.set_defaults(func=cmd_pyramid)

    p = sub.add_parser("bench", help="compare random and pyramid initialization")
    p.add_argument("--images", help="comma-separated PGM paths")
    p.add_argument("--synthetic", action="store_true", help="add synthetic 512x512 images")
    p.add_argument("--out", required=True)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--epsilon", type=float, default=0.001)
    p.add_argument("--max-iters", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="leave the seconds column blank (reproducible CSV)")
    p.add_argument("--table", action="store_true", help="also print a summary table")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        args.func(args)
    except UsageError as e:
        print(f"pyrvq: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigurationError as e:
        print(f"pyrvq: configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataError, OSError) as e:
        print(f"pyrvq: {e}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as e:
        print(f"pyrvq: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
