import csv
import io
import math

import numpy as np
import pytest

from pyrvq import bench
from pyrvq.codec import decode, deserialize, encode, serialize
from pyrvq.errors import NoExactLevelError
from pyrvq.imageio import GrayImage, read_pgm, write_pgm
from pyrvq.metrics import psnr
from pyrvq.vqcore import BlockGeometry, init_pyramid, init_random, lbg_train, tile_image


@pytest.fixture(scope="module")
def small():
    rng = np.random.default_rng(0)
    # smooth-ish content so training has something to do
    y, x = np.mgrid[0:64, 0:64]
    px = 128 + 60 * np.sin(x / 7.0) * np.cos(y / 11.0) + rng.normal(0, 8, (64, 64))
    return GrayImage(np.clip(px, 0, 255).round().astype(np.uint8))


def test_run_config_modified(small):
    row = bench.run_config(small, 16, BlockGeometry(4, 4), bench.MODIFIED, name="s")
    assert row.iterations >= 1 and math.isfinite(row.psnr_db) and row.seed is None
    assert row.error == ""


def test_run_config_constant_image():
    im = GrayImage(np.full((64, 64), 90, np.uint8))
    row = bench.run_config(im, 16, BlockGeometry(4, 4), bench.MODIFIED)
    assert row.iterations == 1 and math.isinf(row.psnr_db)


def test_run_config_no_level(small):
    with pytest.raises(NoExactLevelError, match="N=100"):
        bench.run_config(small, 100, BlockGeometry(8, 8), bench.MODIFIED)


def test_run_config_conventional_needs_seed(small):
    with pytest.raises(ValueError):
        bench.run_config(small, 16, BlockGeometry(4, 4), bench.CONVENTIONAL)


def test_psnr_matches_reloaded_file(small, tmp_path):
    g = BlockGeometry(4, 4)
    for method, seed in [(bench.MODIFIED, None), (bench.CONVENTIONAL, 3)]:
        row = bench.run_config(small, 16, g, method, seed)
        ts = tile_image(small, g)
        init = init_pyramid(small, g, 16) if method == bench.MODIFIED else init_random(ts, 16, seed)
        cb, _ = lbg_train(ts, init, 0.001, 100)
        (tmp_path / "x.pvq").write_bytes(serialize(encode(small, cb)))
        write_pgm(tmp_path / "x.pgm", decode(deserialize((tmp_path / "x.pvq").read_bytes())))
        assert row.psnr_db == psnr(small, read_pgm(tmp_path / "x.pgm")).psnr_db


def test_matrix_row_count(small):
    cfg = bench.BenchConfig(configs=((16, "4x4"), (4, "8x8")), seeds=(0, 1, 2))
    rows = list(csv.DictReader(io.StringIO(bench.run_matrix([("s", small)], cfg))))
    assert len(rows) == 2 * (1 + 3)
    assert [r["method"] for r in rows[:4]] == ["modified", "conventional", "conventional", "conventional"]
    assert list(rows[0].keys()) == list(bench.CSV_COLUMNS)


def test_matrix_deterministic(small):
    cfg = bench.BenchConfig(configs=((16, "4x4"), (64, "2x2")), seeds=(0, 1))
    a = bench.run_matrix([("s", small)], cfg, timing=False)
    b = bench.run_matrix([("s", small)], cfg, timing=False, workers=4)
    assert a == b


def test_matrix_records_cell_errors(small):
    cfg = bench.BenchConfig(configs=((100, "8x8"),), seeds=(0,))
    rows = list(csv.DictReader(io.StringIO(bench.run_matrix([("s", small)], cfg))))
    assert rows[0]["error"].startswith("NoExactLevelError")
    assert rows[0]["iterations"] == ""
    # random init only needs enough blocks, 64 < 100 here
    assert rows[1]["error"].startswith("InsufficientDataError")


def test_modified_rows_repeat(small):
    cfg = bench.BenchConfig(configs=((16, "4x4"),), seeds=(0,))
    a = [r for r in bench.run_rows([("s", small)], cfg) if r.method == bench.MODIFIED]
    b = [r for r in bench.run_rows([("s", small)], cfg) if r.method == bench.MODIFIED]
    assert a[0].distortion_trace == b[0].distortion_trace and a[0].psnr_db == b[0].psnr_db


def test_no_images():
    with pytest.raises(ValueError):
        bench.load_images([], synthetic=False)
    with pytest.raises(ValueError):
        bench.run_matrix([], bench.BenchConfig())


def test_config_validation():
    with pytest.raises(ValueError):
        bench.BenchConfig(seeds=())
    with pytest.raises(ValueError):
        bench.BenchConfig(configs=((1, "4x4"),))


def test_summary_table(small):
    cfg = bench.BenchConfig(configs=((16, "4x4"),), seeds=(0, 1))
    text = bench.summary_table(bench.run_rows([("s", small)], cfg))
    assert "4x4" in text and len(text.splitlines()) == 3
