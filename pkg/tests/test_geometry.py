"""Raster sets, vertical rearrangement, and the discrete phi-perimeter."""

import numpy as np
import pytest

from anisocurve import (
    Anisotropy,
    RasterSet,
    column_heights,
    raster_phi_perimeter,
    read_raster,
    vertical_rearrangement,
    write_raster,
)

EUCLID = Anisotropy.euclidean()
SQUARE = Anisotropy.polygon([[1, 1], [-1, 1], [-1, -1], [1, -1]])
ANISOS = [EUCLID, Anisotropy.lp(1.0), SQUARE, Anisotropy.ellipse(2.0, 0.5)]


def _subgraph(counts, ny, box=(-1.0, 1.0, 0.0, 1.0)):
    counts = np.asarray(counts)
    cells = np.arange(ny)[None, :] < counts[:, None]
    return RasterSet(*box, cells)


def test_rasterset_validation():
    with pytest.raises(ValueError):
        RasterSet(0, 1, 0, 1, np.zeros(4, dtype=bool))
    with pytest.raises(ValueError):
        RasterSet(1, 1, 0, 1, np.zeros((2, 2), dtype=bool))


def test_rearrangement_fixes_subgraphs():
    rng = np.random.default_rng(11)
    counts = rng.integers(0, 9, 12)
    F = _subgraph(counts, 8)
    np.testing.assert_array_equal(vertical_rearrangement(F).cells, F.cells)


def test_rearrangement_disk_column_sums():
    R = 1.0
    n = 200
    xs = np.linspace(-1.5, 1.5, n + 1)
    ys = np.linspace(-1.5, 1.5, n + 1)
    cx = 0.5 * (xs[:-1] + xs[1:])
    cy = 0.5 * (ys[:-1] + ys[1:])
    cells = cx[:, None] ** 2 + cy[None, :] ** 2 <= R**2
    F = RasterSet(-1.5, 1.5, -1.5, 1.5, cells)
    v = column_heights(vertical_rearrangement(F))
    chord = 2.0 * np.sqrt(np.maximum(R**2 - cx**2, 0.0))
    # within one cell height per column, measured from the box bottom
    assert np.max(np.abs(v - (-1.5 + chord))) <= F.dy + 1e-12


def test_rearrangement_bars_add():
    cells = np.zeros((4, 10), dtype=bool)
    cells[:, 1:3] = True  # bar of height 2 cells
    cells[:, 6:9] = True  # bar of height 3 cells
    F = RasterSet(0, 4, 0, 10, cells)
    v = column_heights(vertical_rearrangement(F))
    np.testing.assert_allclose(v, 5.0)


def test_rearrangement_idempotent_and_measure_preserving():
    rng = np.random.default_rng(12)
    for _ in range(20):
        cells = rng.random((10, 10)) < 0.4
        F = RasterSet(0, 1, 0, 1, cells)
        G = vertical_rearrangement(F)
        np.testing.assert_array_equal(G.cells.sum(axis=1), F.cells.sum(axis=1))
        np.testing.assert_array_equal(vertical_rearrangement(G).cells, G.cells)


def test_perimeter_single_cell():
    one = RasterSet(0, 1, 0, 1, np.ones((1, 1), dtype=bool))
    assert raster_phi_perimeter(one, EUCLID) == pytest.approx(4.0)
    assert raster_phi_perimeter(one, SQUARE) == pytest.approx(4.0)


def test_perimeter_domino():
    dom = RasterSet(0, 2, 0, 1, np.ones((2, 1), dtype=bool))
    assert raster_phi_perimeter(dom, EUCLID) == pytest.approx(6.0)


def test_perimeter_scales_with_cell_size():
    one = RasterSet(0, 3, 0, 0.5, np.ones((1, 1), dtype=bool))
    assert raster_phi_perimeter(one, EUCLID) == pytest.approx(2 * 3.0 + 2 * 0.5)


def test_rearrangement_inequality_fuzz():
    rng = np.random.default_rng(13)
    for _ in range(200):
        nx = int(rng.integers(2, 16))
        ny = int(rng.integers(2, 16))
        cells = rng.random((nx, ny)) < rng.uniform(0.2, 0.8)
        F = RasterSet(0, nx, 0, ny, cells)
        G = vertical_rearrangement(F)
        for aniso in ANISOS:
            assert raster_phi_perimeter(G, aniso) <= raster_phi_perimeter(F, aniso) + 1e-9
        np.testing.assert_array_equal(G.cells.sum(axis=1), cells.sum(axis=1))


def test_raster_io_round_trip(tmp_path):
    rng = np.random.default_rng(14)
    cells = rng.random((7, 5)) < 0.5
    F = RasterSet(-2.0, 1.0, 0.5, 3.5, cells)
    path = tmp_path / "set.raster"
    write_raster(F, path)
    G = read_raster(path)
    np.testing.assert_array_equal(G.cells, F.cells)
    assert (G.x_min, G.x_max, G.y_min, G.y_max) == (-2.0, 1.0, 0.5, 3.5)


def test_raster_read_rejects_bad_files(tmp_path):
    empty = tmp_path / "empty.raster"
    empty.write_text("")
    with pytest.raises(ValueError):
        read_raster(empty)
    short = tmp_path / "short.raster"
    short.write_text('{"box": [0, 1, 0, 1], "nx": 2, "ny": 2}\n1 0\n')
    with pytest.raises(ValueError):
        read_raster(short)
    ragged = tmp_path / "ragged.raster"
    ragged.write_text('{"box": [0, 1, 0, 1], "nx": 2, "ny": 1}\n1 0 1\n')
    with pytest.raises(ValueError):
        read_raster(ragged)
