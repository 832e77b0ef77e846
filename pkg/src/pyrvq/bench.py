"""Iteration-count and PSNR comparison of random vs pyramid codebook initialization.

A run trains one codebook for one (image, codebook size, block size, method,
seed) cell, encodes and decodes the image through the serialized format and
measures PSNR. :func:`run_matrix` sweeps the cells and renders CSV.
"""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .codec import decode, deserialize, encode, serialize
from .errors import VQError
from .imageio import GrayImage, read_pgm, synth_image
from .metrics import format_psnr, psnr
from .vqcore import BlockGeometry, init_pyramid, init_random, lbg_train, tile_image

CONVENTIONAL = "conventional"
MODIFIED = "modified"
METHODS = (CONVENTIONAL, MODIFIED)

# (codebook size, block) pairs of the published comparison
PAPER_CONFIGS = (
    (128, BlockGeometry(4, 8)),
    (128, BlockGeometry(8, 4)),
    (256, BlockGeometry(4, 4)),
    (256, BlockGeometry(8, 8)),
    (512, BlockGeometry(4, 8)),
    (512, BlockGeometry(8, 4)),
    (1024, BlockGeometry(4, 4)),
    (1024, BlockGeometry(8, 8)),
)

CSV_COLUMNS = ("image", "N", "block", "method", "seed", "iterations", "psnr_db", "seconds", "repairs", "error")


@dataclass
class BenchConfig:
    configs: tuple = PAPER_CONFIGS
    epsilon: float = 0.001
    seeds: tuple = tuple(range(10))
    max_iters: int = 100

    def __post_init__(self):
        self.configs = tuple((int(n), g if isinstance(g, BlockGeometry) else BlockGeometry.parse(g))
                             for n, g in self.configs)
        self.seeds = tuple(int(s) for s in self.seeds)
        if any(n < 2 for n, _ in self.configs):
            raise ValueError("codebook sizes must be >= 2")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if not self.seeds:
            raise ValueError("conventional runs need at least one seed")


@dataclass
class BenchRow:
    image: str
    n_codewords: int
    geometry: BlockGeometry
    method: str
    seed: int | None = None
    iterations: int | None = None
    psnr_db: float | None = None
    seconds: float | None = None
    repairs: int | None = None
    error: str = ""
    distortion_trace: list = field(default_factory=list, repr=False)

    def csv_record(self, timing: bool = True) -> list[str]:
        return [
            self.image,
            str(self.n_codewords),
            str(self.geometry),
            self.method,
            "" if self.seed is None else str(self.seed),
            "" if self.iterations is None else str(self.iterations),
            "" if self.psnr_db is None else format_psnr(self.psnr_db),
            f"{self.seconds:.3f}" if timing and self.seconds is not None else "",
            "" if self.repairs is None else str(self.repairs),
            self.error,
        ]


def run_config(image: GrayImage, n_codewords: int, geometry: BlockGeometry, method: str,
               seed: int | None = None, epsilon: float = 0.001, max_iters: int = 100,
               name: str = "image") -> BenchRow:
    """Train, encode, serialize, decode and score a single cell."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if method == CONVENTIONAL and seed is None:
        raise ValueError("conventional initialization needs a seed")
    context = f"{name} N={n_codewords} block={geometry} method={method}" + (f" seed={seed}" if method == CONVENTIONAL else "")
    t0 = time.perf_counter()
    try:
        ts = tile_image(image, geometry)
        if method == MODIFIED:
            initial = init_pyramid(image, geometry, n_codewords)
        else:
            initial = init_random(ts, n_codewords, seed)
        codebook, report = lbg_train(ts, initial, epsilon, max_iters)
        blob = serialize(encode(image, codebook))
        decoded = decode(deserialize(blob))
    except VQError as e:
        raise type(e)(f"{context}: {e}") from e
    seconds = time.perf_counter() - t0
    return BenchRow(
        image=name,
        n_codewords=n_codewords,
        geometry=geometry,
        method=method,
        seed=seed if method == CONVENTIONAL else None,
        iterations=report.iterations,
        psnr_db=psnr(image, decoded).psnr_db,
        seconds=seconds,
        repairs=report.empty_cell_repairs,
        distortion_trace=report.distortion_trace,
    )


def synthetic_images(size: int = 512) -> list[tuple[str, GrayImage]]:
    return [(f"synthetic-{kind}", synth_image(kind, size, size, seed=0)) for kind in ("gradient", "checker", "noise")]


def load_images(paths=(), synthetic: bool = False) -> list[tuple[str, GrayImage]]:
    images = [(Path(p).stem, read_pgm(p)) for p in paths]
    if synthetic:
        images += synthetic_images()
    if not images:
        raise ValueError("no images to benchmark: pass image paths or enable synthetic fallbacks")
    return images


def _cells(images, cfg: BenchConfig):
    for name, image in images:
        for n, geometry in cfg.configs:
            yield name, image, n, geometry, MODIFIED, None
            for seed in cfg.seeds:
                yield name, image, n, geometry, CONVENTIONAL, seed


def _run_cell(cell, cfg: BenchConfig) -> BenchRow:
    name, image, n, geometry, method, seed = cell
    try:
        return run_config(image, n, geometry, method, seed, cfg.epsilon, cfg.max_iters, name)
    except VQError as e:
        return BenchRow(name, n, geometry, method, seed=seed, error=f"{type(e).__name__}: {e}")


def run_rows(images, cfg: BenchConfig | None = None, workers: int = 1) -> list[BenchRow]:
    """All cells, in a fixed order: per image and config, the modified row then one row per seed."""
    cfg = cfg or BenchConfig()
    if not images:
        raise ValueError("no images to benchmark")
    cells = list(_cells(images, cfg))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda c: _run_cell(c, cfg), cells))
    return [_run_cell(c, cfg) for c in cells]


def rows_to_csv(rows, timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow(row.csv_record(timing))
    return buf.getvalue()


def run_matrix(images, cfg: BenchConfig | None = None, timing: bool = True, workers: int = 1) -> str:
    """Run every cell and return CSV text.

    ``images`` is a list of ``(name, GrayImage)`` pairs. With ``timing=False``
    the seconds column is left blank and the output is byte-reproducible.
    """
    return rows_to_csv(run_rows(images, cfg, workers), timing)


def _mean(values):
    values = [v for v in values if v is not None]
    return sum(values) / len(values) if values else math.nan


def summary_table(rows) -> str:
    """Plain-text view with one line per (image, N, block): modified vs mean conventional."""
    groups: dict = {}
    for r in rows:
        groups.setdefault((r.image, r.n_codewords, str(r.geometry)), []).append(r)
    header = f"{'image':<20} {'N':>5} {'block':>5} | {'iters mod':>9} {'iters con':>9} | {'PSNR mod':>9} {'PSNR con':>9}"
    lines = [header, "-" * len(header)]
    for (image, n, block), grp in groups.items():
        mod = [r for r in grp if r.method == MODIFIED]
        con = [r for r in grp if r.method == CONVENTIONAL]
        it_mod = mod[0].iterations if mod and mod[0].iterations is not None else None
        ps_mod = mod[0].psnr_db if mod and mod[0].psnr_db is not None else None
        it_con = _mean([r.iterations for r in con])
        ps_con = _mean([r.psnr_db for r in con])
        lines.append(
            f"{image:<20} {n:>5} {block:>5} | "
            f"{'err' if it_mod is None else it_mod:>9} {it_con:>9.1f} | "
            f"{'err' if ps_mod is None else format_psnr(ps_mod):>9} {format_psnr(ps_con):>9}"
        )
    return "\n".join(lines)
