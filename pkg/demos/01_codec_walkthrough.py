# Encode and decode one image with a pyramid-initialized codebook.
#
#   python demos/01_codec_walkthrough.py [image.pgm]
#
# Without an argument a synthetic 512x512 scene is used.

from _scene import image_from_argv

from pyrvq import (
    BlockGeometry,
    compression_ratio,
    decode,
    deserialize,
    encode,
    init_pyramid,
    lbg_train,
    psnr,
    serialize,
    tile_image,
)

name, image = image_from_argv()
print(f"{name}: {image.width}x{image.height}")

# Every 4x4 block becomes a 16-dimensional training vector
geometry = BlockGeometry(4, 4)
ts = tile_image(image, geometry)
print("training vectors:", ts.vectors.shape)

# The initial codebook is the blocks of a reduced copy of the image itself.
# For 256 codewords of 4x4 that is the 64x64 level.
initial = init_pyramid(image, geometry, 256)
codebook, report = lbg_train(ts, initial, epsilon=0.001)
print(f"LBG passes: {report.iterations}, converged: {report.converged}, "
      f"empty-cell repairs: {report.empty_cell_repairs}")
print("distortion per pass (per pixel):", [round(d / geometry.k, 2) for d in report.distortion_trace])

compressed = encode(image, codebook)
blob = serialize(compressed)
print(f"compressed size: {len(blob)} bytes, ratio {compression_ratio(compressed):.3f}")

restored = decode(deserialize(blob))
q = psnr(image, restored)
print(f"MSE {q.mse:.3f}, PSNR {q.psnr_db:.4f} dB")
