"""Reduced-resolution image pyramid and selection of the codebook seed level."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NoExactLevelError
from .imageio import GrayImage


@dataclass(frozen=True)
class Pyramid:
    levels: tuple[GrayImage, ...]

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, i):
        return self.levels[i]

    @property
    def sizes(self) -> list[tuple[int, int]]:
        return [(im.width, im.height) for im in self.levels]


def _can_halve(image: GrayImage) -> bool:
    w, h = image.width, image.height
    return w >= 2 and h >= 2 and w % 2 == 0 and h % 2 == 0


def reduce_once(image: GrayImage) -> GrayImage:
    """Low-pass and subsample by two: each output pixel is the rounded mean of a 2x2 block.

    The mean is rounded half away from zero, computed exactly in integers.
    """
    if not _can_halve(image):
        raise DimensionError(f"cannot halve a {image.width}x{image.height} image")
    px = image.pixels.astype(np.int32)
    block_sums = px[0::2, 0::2] + px[0::2, 1::2] + px[1::2, 0::2] + px[1::2, 1::2]
    # sums are non-negative, so +2 then floor-divide is round-half-up == half away from zero
    out = (block_sums + 2) // 4
    return GrayImage(np.clip(out, 0, 255).astype(np.uint8))


def build_pyramid(image: GrayImage, max_levels: int | None = None) -> Pyramid:
    """Halve repeatedly until a dimension goes odd or below 2, or ``max_levels`` is reached.

    ``levels[0]`` is the input itself; ``max_levels`` counts it.
    """
    if max_levels is not None and max_levels < 1:
        raise ValueError("max_levels must be at least 1")
    levels = [image]
    while _can_halve(levels[-1]) and (max_levels is None or len(levels) < max_levels):
        levels.append(reduce_once(levels[-1]))
    return Pyramid(tuple(levels))


def level_block_count(image_w: int, image_h: int, block_w: int, block_h: int, level: int) -> int | None:
    """Blocks produced by tiling pyramid level ``level``, or None if it does not tile exactly."""
    scale = 1 << level
    if image_w % scale or image_h % scale:
        return None
    w, h = image_w // scale, image_h // scale
    if w % block_w or h % block_h:
        return None
    return (w // block_w) * (h // block_h)


def select_seed_level(image_w: int, image_h: int, block_w: int, block_h: int, codebook_size: int) -> int:
    """Return the pyramid level whose block tiling yields exactly ``codebook_size`` blocks."""
    for name, v in (("image_w", image_w), ("image_h", image_h), ("block_w", block_w),
                    ("block_h", block_h), ("codebook_size", codebook_size)):
        if v < 1:
            raise ValueError(f"{name} must be >= 1, got {v}")
    found = None
    level = 0
    while (image_w >> level) >= 1 and (image_h >> level) >= 1:
        if level_block_count(image_w, image_h, block_w, block_h, level) == codebook_size:
            found = level
        # beyond an odd dimension no further level exists
        if (image_w >> level) % 2 or (image_h >> level) % 2:
            break
        level += 1
    if found is None:
        raise NoExactLevelError(
            f"no pyramid level of a {image_w}x{image_h} image tiles into exactly "
            f"{codebook_size} blocks of {block_w}x{block_h}"
        )
    return found
