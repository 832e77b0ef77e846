# Which pyramid level seeds which codebook?
#
# A level seeds a codebook of size N when it tiles into exactly N blocks.
# Halving both sides divides the block count by four, so at most one level
# can match.

import numpy as np

from pyrvq import GrayImage, NoExactLevelError, build_pyramid, select_seed_level
from pyrvq.bench import PAPER_CONFIGS

pyr = build_pyramid(GrayImage(np.zeros((512, 512), np.uint8)))
print("levels of a 512x512 image:", " ".join(f"{w}x{h}" for w, h in pyr.sizes))
print()

for n, g in PAPER_CONFIGS:
    level = select_seed_level(512, 512, g.block_w, g.block_h, n)
    w, h = pyr.sizes[level]
    print(f"N={n:<5} block {g}:  level {level}  ({w}x{h}, {w // g.block_w} x {h // g.block_h} blocks)")

# Sizes that no level produces are rejected
try:
    select_seed_level(512, 512, 8, 8, 100)
except NoExactLevelError as e:
    print("\nN=100, 8x8:", e)
