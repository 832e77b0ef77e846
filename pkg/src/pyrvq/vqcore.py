"""Block vectors, codebooks and LBG training.

Training vectors are rows of a float64 ``(n, k)`` array; a codebook is an
``(N, k)`` float64 array of codewords. Nearest-codeword search is exhaustive
with ties going to the lowest index, and is exact: a BLAS screen proposes
candidates and any near-tie is settled by direct squared differences, so the
result does not depend on BLAS blocking or thread count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, InsufficientDataError, ReassemblyError, TilingError
from .imageio import GrayImage
from .pyramid import build_pyramid, select_seed_level

_EPS = np.finfo(np.float64).eps
_CHUNK = 2048


@dataclass(frozen=True)
class BlockGeometry:
    block_w: int
    block_h: int

    def __post_init__(self):
        if self.block_w < 1 or self.block_h < 1:
            raise ValueError(f"block size must be positive, got {self.block_w}x{self.block_h}")

    @property
    def k(self) -> int:
        return self.block_w * self.block_h

    @classmethod
    def parse(cls, text: str) -> BlockGeometry:
        """Parse ``"WxH"`` (e.g. ``"4x8"``)."""
        m = re.fullmatch(r"\s*(\d+)\s*[xX]\s*(\d+)\s*", text)
        if not m:
            raise ValueError(f"block size must look like WxH, got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __str__(self):
        return f"{self.block_w}x{self.block_h}"


@dataclass(eq=False)
class TrainingSet:
    geometry: BlockGeometry
    vectors: np.ndarray
    blocks_per_row: int

    def __len__(self):
        return len(self.vectors)

    @property
    def k(self) -> int:
        return self.geometry.k


@dataclass
class TrainingReport:
    iterations: int
    distortion_trace: list[float]
    converged: bool
    epsilon: float
    empty_cell_repairs: int = 0

    @property
    def final_distortion(self) -> float:
        return self.distortion_trace[-1]


@dataclass(eq=False)
class Codebook:
    geometry: BlockGeometry
    codewords: np.ndarray
    report: TrainingReport | None = field(default=None, compare=False)

    def __post_init__(self):
        cw = np.array(self.codewords, dtype=np.float64, copy=True)
        if cw.ndim != 2 or cw.shape[0] < 1:
            raise DimensionError("a codebook needs at least one codeword")
        if cw.shape[1] != self.geometry.k:
            raise DimensionError(f"codewords have length {cw.shape[1]}, geometry {self.geometry} needs {self.geometry.k}")
        self.codewords = cw

    @property
    def size(self) -> int:
        return self.codewords.shape[0]

    def __len__(self):
        return self.size


def round_half_away(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def to_uint8(x: np.ndarray) -> np.ndarray:
    return np.clip(round_half_away(x), 0, 255).astype(np.uint8)


def tile_image(image: GrayImage, geometry: BlockGeometry) -> TrainingSet:
    """Cut the image into non-overlapping blocks, one row-major vector per block, blocks in row-major order."""
    bw, bh = geometry.block_w, geometry.block_h
    if image.width % bw or image.height % bh:
        raise TilingError(f"{image.width}x{image.height} image does not tile into {geometry} blocks")
    bx, by = image.width // bw, image.height // bh
    blocks = image.pixels.reshape(by, bh, bx, bw).transpose(0, 2, 1, 3)
    return TrainingSet(geometry, blocks.reshape(bx * by, bh * bw).astype(np.float64), bx)


def untile(vectors, geometry: BlockGeometry, image_w: int, image_h: int) -> GrayImage:
    """Reassemble block vectors into an image (inverse of :func:`tile_image`)."""
    if isinstance(vectors, TrainingSet):
        vectors = vectors.vectors
    v = np.asarray(vectors, dtype=np.float64)
    bw, bh = geometry.block_w, geometry.block_h
    if image_w % bw or image_h % bh:
        raise TilingError(f"{image_w}x{image_h} image does not tile into {geometry} blocks")
    bx, by = image_w // bw, image_h // bh
    if v.ndim != 2 or v.shape != (bx * by, geometry.k):
        raise ReassemblyError(f"need {bx * by} vectors of length {geometry.k}, got array of shape {v.shape}")
    px = to_uint8(v).reshape(by, bx, bh, bw).transpose(0, 2, 1, 3).reshape(image_h, image_w)
    return GrayImage(px)


def _sqdist(v: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Direct squared Euclidean distance along the last axis; the exact reference path."""
    d = v - c
    return np.einsum("...i,...i->...", d, d)


def nearest_codeword(v, codebook: Codebook) -> tuple[int, float]:
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (codebook.geometry.k,):
        raise DimensionError(f"vector of shape {v.shape} against codewords of length {codebook.geometry.k}")
    d = _sqdist(v[None, :], codebook.codewords)
    i = int(np.argmin(d))
    return i, float(d[i])


def assign(vectors: np.ndarray, codewords: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nearest codeword for every row of ``vectors``.

    Returns ``(labels, dists)``; identical to calling :func:`nearest_codeword`
    row by row, lowest index on ties.
    """
    x = np.asarray(vectors, dtype=np.float64)
    cw = np.asarray(codewords, dtype=np.float64)
    if x.ndim != 2 or cw.ndim != 2 or x.shape[1] != cw.shape[1]:
        raise DimensionError(f"cannot assign {x.shape} vectors to {cw.shape} codewords")
    n, k = x.shape

    # duplicate codewords always tie; keep first occurrences, ordered by original index
    uniq, first = np.unique(cw, axis=0, return_index=True)
    order = np.argsort(first, kind="stable")
    uniq, first = uniq[order], first[order]

    cc = np.einsum("ij,ij->i", uniq, uniq)
    cc_max = cc.max()
    labels = np.empty(n, dtype=np.intp)
    for s in range(0, n, _CHUNK):
        xs = x[s : s + _CHUNK]
        xx = np.einsum("ij,ij->i", xs, xs)
        # ||x||^2 is common to a row, leave it out of the screen
        approx = xs @ uniq.T
        approx *= -2.0
        approx += cc
        best = approx.argmin(axis=1)
        rows = np.arange(len(xs))
        m = approx[rows, best]
        # bound on the screen's rounding error, doubled for comparing two entries
        tol = 8.0 * (k + 2) * _EPS * (xx + cc_max) + 1e-300
        approx[rows, best] = np.inf
        ambiguous = np.flatnonzero(approx.min(axis=1) <= m + tol)
        for r in ambiguous:
            cand = np.flatnonzero(approx[r] <= m[r] + tol[r])
            cand = np.append(cand, best[r])
            cand.sort()
            d = _sqdist(xs[r][None, :], uniq[cand])
            best[r] = cand[int(np.argmin(d))]
        labels[s : s + len(xs)] = best
    dists = _sqdist(x, uniq[labels])
    return first[labels], dists


def init_random(ts: TrainingSet, n_codewords: int, seed: int) -> Codebook:
    """Pick ``n_codewords`` distinct training vectors uniformly at random (seeded)."""
    if n_codewords < 1:
        raise ValueError("codebook size must be >= 1")
    if len(ts) < n_codewords:
        raise InsufficientDataError(f"{len(ts)} training vectors cannot seed {n_codewords} codewords")
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(ts), size=n_codewords, replace=False)
    return Codebook(ts.geometry, ts.vectors[idx].copy())


def init_pyramid(image: GrayImage, geometry: BlockGeometry, n_codewords: int) -> Codebook:
    """Initial codebook from the blocks of the reduced image that tiles into exactly ``n_codewords`` blocks."""
    level = select_seed_level(image.width, image.height, geometry.block_w, geometry.block_h, n_codewords)
    reduced = build_pyramid(image, max_levels=level + 1)[level]
    return Codebook(geometry, tile_image(reduced, geometry).vectors)


def _cell_sums(x: np.ndarray, labels: np.ndarray, n_cells: int) -> tuple[np.ndarray, np.ndarray]:
    # bincount accumulates in index order, which keeps the sums reproducible
    counts = np.bincount(labels, minlength=n_cells)
    sums = np.empty((n_cells, x.shape[1]))
    for j in range(x.shape[1]):
        sums[:, j] = np.bincount(labels, weights=x[:, j], minlength=n_cells)
    return counts, sums


def update_codebook(x: np.ndarray, labels: np.ndarray, dists: np.ndarray, codewords: np.ndarray) -> tuple[np.ndarray, int]:
    """Centroid step with farthest-point repair of empty cells.

    An empty cell takes over the training vector farthest from its assigned
    codeword (never the sole member of a cell). Returns the new codewords and
    the number of repairs.
    """
    n_cells = len(codewords)
    counts, sums = _cell_sums(x, labels, n_cells)
    labels = labels.copy()
    d = dists.copy()
    repairs = 0
    for j in np.flatnonzero(counts == 0):
        eligible = counts[labels] > 1
        if not eligible.any():
            break
        i = int(np.argmax(np.where(eligible, d, -1.0)))
        old = labels[i]
        counts[old] -= 1
        counts[j] = 1
        labels[i] = j
        d[i] = 0.0
        repairs += 1
    if repairs:
        counts, sums = _cell_sums(x, labels, n_cells)
    new = codewords.copy()
    filled = counts > 0
    new[filled] = sums[filled] / counts[filled, None]
    return new, repairs


def lbg_train(ts: TrainingSet, initial: Codebook, epsilon: float = 0.001, max_iters: int = 100) -> tuple[Codebook, TrainingReport]:
    """Generalized Lloyd iteration from ``initial``.

    Each pass assigns every training vector to its nearest codeword and
    records the mean squared distortion D_m; training stops when
    ``(D_{m-1} - D_m) / D_m <= epsilon``, when D_m is zero, when the
    partition repeats (a fixed point, so the next pass could not change D),
    or after ``max_iters`` passes. The returned codebook is the one used in
    the last pass, so its distortion is the last entry of the trace.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    if len(ts) == 0:
        raise InsufficientDataError("empty training set")
    if initial.geometry.k != ts.k:
        raise DimensionError(f"codebook dimension {initial.geometry.k} != training dimension {ts.k}")

    x = ts.vectors
    cw = initial.codewords.copy()
    trace: list[float] = []
    repairs = 0
    converged = False
    prev_labels = None
    prev_repaired = True
    for _ in range(max_iters):
        labels, dists = assign(x, cw)
        dm = float(dists.sum()) / len(x)
        trace.append(dm)
        if dm == 0.0:
            converged = True
            break
        if len(trace) > 1 and (trace[-2] - dm) / dm <= epsilon:
            converged = True
            break
        if prev_labels is not None and not prev_repaired and np.array_equal(labels, prev_labels):
            converged = True
            break
        cw, n_rep = update_codebook(x, labels, dists, cw)
        repairs += n_rep
        prev_repaired = n_rep > 0
        prev_labels = labels

    report = TrainingReport(len(trace), trace, converged, epsilon, repairs)
    return Codebook(initial.geometry, cw, report), report
