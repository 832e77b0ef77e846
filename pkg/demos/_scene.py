import sys
from pathlib import Path

import numpy as np

from pyrvq import GrayImage, read_pgm


def scene(size=512, seed=0):
    """Smooth shapes, an edge and mild noise: closer to a photograph than the built-in synthetic kinds."""
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size] / size
    px = 90 + 60 * np.sin(6 * x) * np.cos(4 * y)
    px += 70 * (((x - 0.6) ** 2 + (y - 0.4) ** 2) < 0.05)
    px += 40 * (x + y > 1.2)
    px += rng.normal(0, 6, px.shape)
    return GrayImage(np.clip(np.round(px), 0, 255).astype(np.uint8))


def image_from_argv(size=512):
    if len(sys.argv) > 1:
        return Path(sys.argv[1]).stem, read_pgm(sys.argv[1])
    return "scene", scene(size)
