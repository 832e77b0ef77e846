"""MSE and PSNR between 8-bit grayscale images (peak 255)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .imageio import GrayImage

PEAK = 255


@dataclass(frozen=True)
class QualityReport:
    mse: float
    psnr_db: float  # math.inf for identical images

    @property
    def lossless(self) -> bool:
        return math.isinf(self.psnr_db)


def mse(a: GrayImage, b: GrayImage) -> float:
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionError(f"{a.width}x{a.height} vs {b.width}x{b.height}")
    diff = a.pixels.astype(np.int64) - b.pixels.astype(np.int64)
    return int(np.sum(diff * diff)) / diff.size


def psnr_from_mse(mse_value: float) -> float:
    if mse_value < 0:
        raise ValueError("mse cannot be negative")
    if mse_value == 0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse_value)


def psnr(a: GrayImage, b: GrayImage) -> QualityReport:
    m = mse(a, b)
    return QualityReport(m, psnr_from_mse(m))


def format_psnr(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.4f}"
