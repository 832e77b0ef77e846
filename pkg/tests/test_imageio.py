import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pyrvq.errors import DegenerateInputError, FormatError, TruncationError, UnsupportedDepthError
from pyrvq.imageio import GrayImage, load_pgm, read_pgm, save_pgm, synth_image, write_pgm


def test_load_basic():
    img = load_pgm(b"P5\n2 2\n255\n" + bytes([0, 64, 128, 255]))
    assert (img.width, img.height) == (2, 2)
    assert list(img.samples) == [0, 64, 128, 255]


def test_load_single_pixel():
    img = load_pgm(b"P5\n1 1\n255\n" + bytes([7]))
    assert img == GrayImage.from_samples(1, 1, [7])


def test_load_truncated():
    with pytest.raises(TruncationError):
        load_pgm(b"P5\n2 2\n255\n" + bytes(3))


@pytest.mark.parametrize("data", [b"P2\n1 1\n255\n0", b"P6\n1 1\n255\n\x00\x00\x00", b"", b"P5", b"P5\nx 1\n255\n\x00"])
def test_load_bad_header(data):
    with pytest.raises(FormatError):
        load_pgm(data)


def test_load_16_bit_rejected():
    with pytest.raises(UnsupportedDepthError):
        load_pgm(b"P5\n1 1\n65535\n\x00\x00")


@pytest.mark.parametrize("header", [
    b"P5 2 1 255 ",
    b"P5\n# made by hand\n2 1\n255\n",
    b"P5\n2\n1\n# comment before maxval\n255\n",
    b"P5\t2  1\r\n255\n",
    b"P5#c\n2 1 255\n",
])
def test_header_whitespace_variants(header):
    img = load_pgm(header + bytes([9, 200]))
    assert (img.width, img.height) == (2, 1)
    assert list(img.samples) == [9, 200]


def test_sample_bytes_may_look_like_whitespace():
    # the single whitespace byte after maxval ends the header; the next bytes are data
    img = load_pgm(b"P5\n2 1\n255\n" + b"\n#")
    assert list(img.samples) == [10, 35]


def test_save_single_pixel():
    assert save_pgm(GrayImage.from_samples(1, 1, [7])) == b"P5\n1 1\n255\n\x07"


def test_save_width_first():
    assert save_pgm(GrayImage.from_samples(2, 1, [0, 255])).startswith(b"P5\n2 1\n")


def test_roundtrip_64(tmp_path):
    img = synth_image("noise", 64, 64, seed=3)
    assert load_pgm(save_pgm(img)) == img
    write_pgm(tmp_path / "x.pgm", img)
    assert read_pgm(tmp_path / "x.pgm") == img


@settings(max_examples=100, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 20), st.integers(1, 20))))
def test_roundtrip_property(px):
    img = GrayImage(px)
    assert load_pgm(save_pgm(img)) == img


def test_synth_checker():
    img = synth_image("checker", 16, 16, 0).pixels
    assert (img[:8, :8] == 0).all()
    assert (img[:8, 8:] == 255).all()
    assert (img[8:, :8] == 255).all()
    assert (img[8:, 8:] == 0).all()


def test_synth_gradient():
    assert list(synth_image("gradient", 256, 1, 0).samples) == list(range(256))


def test_synth_gradient_degenerate():
    with pytest.raises(DegenerateInputError):
        synth_image("gradient", 1, 4, 0)


def test_synth_noise_deterministic():
    assert synth_image("noise", 8, 8, 42) == synth_image("noise", 8, 8, 42)
    assert synth_image("noise", 8, 8, 42) != synth_image("noise", 8, 8, 43)


def test_gray_image_is_immutable():
    img = synth_image("noise", 4, 4, 0)
    with pytest.raises(ValueError):
        img.pixels[0, 0] = 1
