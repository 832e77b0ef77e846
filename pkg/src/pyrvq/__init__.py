"""Grayscale vector-quantization codec with LBG codebook training.

Two codebook initializers are provided: random selection of training blocks
and the blocks of a reduced-resolution pyramid level of the image itself.
"""

from .codec import CompressedImage, IndexTable, compression_ratio, decode, deserialize, encode, serialize
from .errors import *  # noqa: F401,F403
from .imageio import GrayImage, load_pgm, read_pgm, save_pgm, synth_image, write_pgm
from .metrics import QualityReport, mse, psnr
from .pyramid import Pyramid, build_pyramid, reduce_once, select_seed_level
from .vqcore import (
    BlockGeometry,
    Codebook,
    TrainingReport,
    TrainingSet,
    init_pyramid,
    init_random,
    lbg_train,
    nearest_codeword,
    tile_image,
    untile,
)

__version__ = "0.1.0"
