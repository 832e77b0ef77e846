"""8-bit grayscale images: the PGM (P5) reader/writer and synthetic test images."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError, DimensionError, FormatError, TruncationError, UnsupportedDepthError

_WHITESPACE = b" \t\n\r\v\f"


@dataclass(frozen=True, eq=False)
class GrayImage:
    """A ``height x width`` grid of gray levels stored as a read-only uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise DimensionError(f"expected a non-empty 2-D array, got shape {px.shape}")
        if px.dtype != np.uint8:
            if np.issubdtype(px.dtype, np.floating) and not np.all(px == np.round(px)):
                raise DimensionError("pixel values must be integers")
            if px.min() < 0 or px.max() > 255:
                raise DimensionError("pixel values must lie in [0, 255]")
            px = px.astype(np.uint8)
        px = np.ascontiguousarray(px).copy()
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @classmethod
    def from_samples(cls, width: int, height: int, samples) -> GrayImage:
        samples = np.asarray(samples)
        if samples.size != width * height:
            raise DimensionError(f"{samples.size} samples for a {width}x{height} image")
        return cls(samples.reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def samples(self) -> np.ndarray:
        """Row-major flat view of the pixels."""
        return self.pixels.ravel()

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __repr__(self):
        return f"GrayImage({self.width}x{self.height})"


def _next_token(data: bytes, pos: int) -> tuple[bytes, int]:
    n = len(data)
    while pos < n:
        if data[pos] in _WHITESPACE:
            pos += 1
        elif data[pos] == ord("#"):
            # comment runs to end of line
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
        else:
            break
    start = pos
    while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
        pos += 1
    if start == pos:
        raise FormatError("unexpected end of PGM header")
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str) -> tuple[int, int]:
    tok, pos = _next_token(data, pos)
    if not tok.isdigit():
        raise FormatError(f"bad PGM {what}: {tok!r}")
    return int(tok), pos


def load_pgm(data: bytes) -> GrayImage:
    """Parse a binary (P5) PGM with maxval <= 255."""
    if data[:2] != b"P5":
        raise FormatError(f"not a binary PGM (magic {data[:2]!r})")
    pos = 2
    if pos >= len(data) or (data[pos] not in _WHITESPACE and data[pos] != ord("#")):
        raise FormatError("missing whitespace after PGM magic")
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise FormatError(f"bad PGM dimensions {width}x{height}")
    if maxval < 1:
        raise FormatError(f"bad PGM maxval {maxval}")
    if maxval > 255:
        raise UnsupportedDepthError(f"maxval {maxval} needs 16-bit samples; only 8-bit is supported")
    if pos >= len(data) or data[pos] not in _WHITESPACE:
        raise TruncationError("PGM header is not followed by sample data")
    pos += 1
    need = width * height
    body = data[pos : pos + need]
    if len(body) < need:
        raise TruncationError(f"expected {need} sample bytes, found {len(body)}")
    return GrayImage(np.frombuffer(body, dtype=np.uint8).reshape(height, width))


def save_pgm(image: GrayImage) -> bytes:
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes()


def read_pgm(path) -> GrayImage:
    with open(path, "rb") as f:
        return load_pgm(f.read())


def write_pgm(path, image: GrayImage) -> None:
    with open(path, "wb") as f:
        f.write(save_pgm(image))


def synth_image(kind: str, width: int, height: int, seed: int = 0) -> GrayImage:
    """Deterministic synthetic image: ``gradient``, ``checker`` or ``noise``.

    gradient ramps 0..255 left to right, checker alternates 0/255 in 8x8
    cells starting with 0 at the top left, noise is uniform seeded bytes.
    """
    if width < 1 or height < 1:
        raise DegenerateInputError(f"image size must be positive, got {width}x{height}")
    if kind == "gradient":
        if width < 2:
            raise DegenerateInputError("a gradient needs width >= 2")
        row = (255 * np.arange(width)) // (width - 1)
        px = np.broadcast_to(row, (height, width))
    elif kind == "checker":
        r = np.arange(height)[:, None] // 8
        c = np.arange(width)[None, :] // 8
        px = ((r + c) % 2) * 255
    elif kind == "noise":
        px = np.random.default_rng(seed).integers(0, 256, size=(height, width), dtype=np.uint8)
    else:
        raise ValueError(f"unknown synthetic image kind {kind!r}")
    return GrayImage(np.asarray(px, dtype=np.uint8))
