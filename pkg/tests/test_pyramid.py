import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pyrvq.errors import DimensionError, NoExactLevelError
from pyrvq.imageio import GrayImage, synth_image
from pyrvq.pyramid import build_pyramid, reduce_once, select_seed_level


def img(rows):
    return GrayImage(np.array(rows, dtype=np.uint8))


def test_reduce_mean():
    assert reduce_once(img([[0, 0], [0, 4]])) == img([[1]])


def test_reduce_constant():
    assert reduce_once(img([[10, 10], [10, 10]])) == img([[10]])


def test_reduce_half_rounds_up():
    checker = (np.indices((4, 4)).sum(axis=0) % 2) * 255
    assert reduce_once(img(checker)) == img(np.full((2, 2), 128))


@pytest.mark.parametrize("shape", [(3, 4), (4, 3), (1, 2), (2, 1)])
def test_reduce_rejects_bad_dims(shape):
    with pytest.raises(DimensionError):
        reduce_once(GrayImage(np.zeros(shape, np.uint8)))


def test_reduce_oracle_random():
    rng = np.random.default_rng(0)
    px = rng.integers(0, 256, (16, 24))
    out = reduce_once(img(px)).pixels
    for r in range(8):
        for c in range(12):
            mean = px[2 * r:2 * r + 2, 2 * c:2 * c + 2].sum() / 4
            assert out[r, c] == int(np.floor(mean + 0.5))


def test_pyramid_512():
    pyr = build_pyramid(synth_image("noise", 512, 512, 1))
    assert [w for w, _ in pyr.sizes] == [512, 256, 128, 64, 32, 16, 8, 4, 2, 1]
    assert [h for _, h in pyr.sizes] == [512, 256, 128, 64, 32, 16, 8, 4, 2, 1]


def test_pyramid_odd():
    im = GrayImage(np.zeros((3, 3), np.uint8))
    pyr = build_pyramid(im)
    assert len(pyr) == 1 and pyr[0] is im


def test_pyramid_max_levels():
    assert len(build_pyramid(synth_image("noise", 64, 64, 0), max_levels=3)) == 3


def test_pyramid_constant():
    pyr = build_pyramid(GrayImage(np.full((512, 512), 77, np.uint8)))
    assert all((lvl.pixels == 77).all() for lvl in pyr.levels)


def test_pyramid_stops_on_odd_level():
    assert build_pyramid(GrayImage(np.zeros((12, 20), np.uint8))).sizes == [(20, 12), (10, 6), (5, 3)]


@settings(max_examples=60, deadline=None)
@given(arrays(np.uint8, st.tuples(st.sampled_from([2, 4, 8, 16]), st.sampled_from([2, 4, 8, 16, 32]))))
def test_pyramid_properties(px):
    pyr = build_pyramid(GrayImage(px))
    for a, b in zip(pyr.levels, pyr.levels[1:]):
        assert (b.width, b.height) == (a.width // 2, a.height // 2)
        assert abs(b.pixels.mean() - a.pixels.mean()) <= 0.5
        blocks = a.pixels.astype(int).reshape(b.height, 2, b.width, 2)
        assert (b.pixels >= blocks.min(axis=(1, 3)) - 0.5).all()
        assert (b.pixels <= blocks.max(axis=(1, 3)) + 0.5).all()


def test_seed_level_table_values():
    assert select_seed_level(512, 512, 4, 8, 128) == 3
    assert select_seed_level(512, 512, 4, 4, 1024) == 2


def brute_force_levels(w, h, bw, bh, n):
    hits = []
    for level in range(0, 20):
        s = 2 ** level
        if w % s or h % s:
            break
        lw, lh = w // s, h // s
        if lw % bw == 0 and lh % bh == 0 and (lw // bw) * (lh // bh) == n:
            hits.append(level)
    return hits


def test_seed_level_missing():
    assert brute_force_levels(512, 512, 8, 8, 100) == []
    with pytest.raises(NoExactLevelError):
        select_seed_level(512, 512, 8, 8, 100)


@pytest.mark.parametrize("w,h", [(512, 512), (256, 128), (96, 64), (640, 480)])
@pytest.mark.parametrize("bw,bh", [(4, 4), (4, 8), (8, 4), (8, 8), (2, 2), (3, 3)])
def test_seed_level_matches_brute_force(w, h, bw, bh):
    for n in [1, 2, 4, 16, 64, 100, 128, 256, 512, 1024, 4096]:
        hits = brute_force_levels(w, h, bw, bh, n)
        assert len(hits) <= 1
        if hits:
            assert select_seed_level(w, h, bw, bh, n) == hits[0]
        else:
            with pytest.raises(NoExactLevelError):
                select_seed_level(w, h, bw, bh, n)
