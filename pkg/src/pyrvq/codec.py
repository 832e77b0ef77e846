"""VQ encoding, the ``.pvq`` file format, and decoding.

File layout, little-endian, no padding and no checksum::

    0   4s  magic b"PVQ1"
    4   u16 format version (1)
    6   u32 image width
    10  u32 image height
    14  u16 block width
    16  u16 block height
    18  u32 codebook size N
    22  u16 index width in bytes (1 if N <= 256, else 2)
    24  N * block_w * block_h codeword bytes, codeword-major, row-major within a block
    ..  blocks_y * blocks_x indices, row-major over the block grid
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadMagicError,
    CorruptionError,
    DimensionError,
    IndexRangeError,
    LengthError,
    StreamTruncatedError,
    TilingError,
    VersionMismatchError,
)
from .imageio import GrayImage
from .vqcore import BlockGeometry, Codebook, assign, tile_image, to_uint8, untile

MAGIC = b"PVQ1"
VERSION = 1
_HEADER = struct.Struct("<4sHIIHHIH")
HEADER_SIZE = _HEADER.size  # 24


@dataclass(eq=False)
class IndexTable:
    indices: np.ndarray
    blocks_x: int
    blocks_y: int

    def __post_init__(self):
        self.indices = np.asarray(self.indices, dtype=np.int64).ravel()
        if len(self.indices) != self.blocks_x * self.blocks_y:
            raise DimensionError(f"{len(self.indices)} indices for a {self.blocks_x}x{self.blocks_y} block grid")

    def __eq__(self, other):
        if not isinstance(other, IndexTable):
            return NotImplemented
        return (self.blocks_x, self.blocks_y) == (other.blocks_x, other.blocks_y) and np.array_equal(self.indices, other.indices)


@dataclass(eq=False)
class CompressedImage:
    """Everything the decoder needs: dimensions, geometry, 8-bit codebook and index table."""

    image_w: int
    image_h: int
    geometry: BlockGeometry
    codebook: np.ndarray  # (N, k) uint8
    index_table: IndexTable

    def __post_init__(self):
        self.codebook = np.asarray(self.codebook)
        if self.codebook.dtype != np.uint8:
            raise DimensionError("stored codewords must be uint8")
        if self.codebook.ndim != 2 or self.codebook.shape[0] < 1 or self.codebook.shape[1] != self.geometry.k:
            raise DimensionError(f"codebook shape {self.codebook.shape} does not match geometry {self.geometry}")
        if self.image_w % self.geometry.block_w or self.image_h % self.geometry.block_h:
            raise TilingError(f"{self.image_w}x{self.image_h} image does not tile into {self.geometry} blocks")
        bx, by = self.image_w // self.geometry.block_w, self.image_h // self.geometry.block_h
        if (self.index_table.blocks_x, self.index_table.blocks_y) != (bx, by):
            raise DimensionError("index table grid does not match image and geometry")

    @property
    def n_codewords(self) -> int:
        return self.codebook.shape[0]

    @property
    def index_width(self) -> int:
        return 1 if self.n_codewords <= 256 else 2

    def __eq__(self, other):
        if not isinstance(other, CompressedImage):
            return NotImplemented
        return (
            (self.image_w, self.image_h, self.geometry) == (other.image_w, other.image_h, other.geometry)
            and np.array_equal(self.codebook, other.codebook)
            and self.index_table == other.index_table
        )


def encode(image: GrayImage, codebook: Codebook) -> CompressedImage:
    """Replace each block by the index of its nearest codeword.

    Codewords are rounded to 8 bits first and the search runs against the
    rounded values, which are what the decoder will see.
    """
    ts = tile_image(image, codebook.geometry)
    stored = to_uint8(codebook.codewords)
    labels, _ = assign(ts.vectors, stored.astype(np.float64))
    bx = ts.blocks_per_row
    table = IndexTable(labels, bx, len(ts) // bx)
    return CompressedImage(image.width, image.height, codebook.geometry, stored, table)


def decode(compressed: CompressedImage) -> GrayImage:
    idx = compressed.index_table.indices
    if idx.size and (idx.min() < 0 or idx.max() >= compressed.n_codewords):
        raise IndexRangeError(f"index out of range for a {compressed.n_codewords}-entry codebook")
    blocks = compressed.codebook[idx]
    return untile(blocks, compressed.geometry, compressed.image_w, compressed.image_h)


def serialize(compressed: CompressedImage) -> bytes:
    n = compressed.n_codewords
    if n > 65536:
        raise CorruptionError(f"codebook of {n} entries does not fit 2-byte indices")
    g = compressed.geometry
    header = _HEADER.pack(MAGIC, VERSION, compressed.image_w, compressed.image_h,
                          g.block_w, g.block_h, n, compressed.index_width)
    dtype = "<u1" if compressed.index_width == 1 else "<u2"
    idx = compressed.index_table.indices
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise IndexRangeError(f"index out of range for a {n}-entry codebook")
    return header + compressed.codebook.tobytes() + idx.astype(dtype).tobytes()


def deserialize(data: bytes) -> CompressedImage:
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagicError(f"bad magic {bytes(data[:4])!r}")
    if len(data) < HEADER_SIZE:
        raise StreamTruncatedError(f"header needs {HEADER_SIZE} bytes, stream has {len(data)}")
    _, version, w, h, bw, bh, n, iw = _HEADER.unpack_from(data)
    if version != VERSION:
        raise VersionMismatchError(f"format version {version}, expected {VERSION}")
    if w < 1 or h < 1 or bw < 1 or bh < 1 or n < 1:
        raise CorruptionError("zero dimension in header")
    if w % bw or h % bh:
        raise CorruptionError(f"{w}x{h} image does not tile into {bw}x{bh} blocks")
    if iw != (1 if n <= 256 else 2):
        raise CorruptionError(f"index width {iw} is inconsistent with codebook size {n}")
    k = bw * bh
    n_blocks = (w // bw) * (h // bh)
    cb_end = HEADER_SIZE + n * k
    total = cb_end + n_blocks * iw
    if len(data) < total:
        what = "codebook" if len(data) < cb_end else "index table"
        raise StreamTruncatedError(f"{what} truncated: need {total} bytes, have {len(data)}")
    if len(data) > total:
        raise LengthError(f"{len(data) - total} trailing bytes after index table")
    codebook = np.frombuffer(data, dtype=np.uint8, count=n * k, offset=HEADER_SIZE).reshape(n, k).copy()
    idx = np.frombuffer(data, dtype="<u1" if iw == 1 else "<u2", count=n_blocks, offset=cb_end).astype(np.int64)
    if idx.size and idx.max() >= n:
        raise IndexRangeError(f"index {int(idx.max())} >= codebook size {n}")
    return CompressedImage(w, h, BlockGeometry(bw, bh), codebook, IndexTable(idx, w // bw, h // bh))


def compression_ratio(compressed: CompressedImage) -> float:
    """Raw 8-bit image size over serialized size."""
    return compressed.image_w * compressed.image_h / len(serialize(compressed))
