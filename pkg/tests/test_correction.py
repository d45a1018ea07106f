from __future__ import annotations

import math

import numpy as np
import pytest

from entropytrack.analysis.correction import apply_correction, block_mean, correct, downsample_entropy
from entropytrack.analysis.metrics import center_of_gravity, pearson
from entropytrack.errors import DimensionMismatch
from entropytrack.perception.entropy_map import EntropyMap, normalize_unit
from entropytrack.tracking.dwell import DwellMap


def _dwell(values, cell_size=1):
    return DwellMap(dwell=np.asarray(values, dtype=np.float64), cell_size=cell_size)


def _random_pair(rng, shape=(30, 40)):
    dwell = rng.exponential(200.0, size=shape) * (rng.random(shape) < 0.4)
    weights = rng.random(shape) * (rng.random(shape) < 0.7)
    return _dwell(dwell), weights


def test_downsample_cell_one_is_unit_map(rng):
    em = EntropyMap(bits=rng.random((6, 5)) * math.log2(9), window=3)
    np.testing.assert_array_equal(downsample_entropy(em, 1), normalize_unit(em))


def test_block_mean_full_block():
    assert block_mean(np.array([[0.0, 0.0], [1.0, 1.0]]), 2).tolist() == [[0.5]]


def test_block_mean_truncated_edge_block():
    values = np.array([[0.3, 0.6, 0.9]])
    assert block_mean(values, 4)[0, 0] == pytest.approx(0.6)


def test_block_mean_shape_and_edges():
    values = np.arange(35, dtype=np.float64).reshape(5, 7)
    out = block_mean(values, 3)
    assert out.shape == (2, 3)
    assert out[0, 0] == pytest.approx(values[0:3, 0:3].mean())
    assert out[1, 2] == pytest.approx(values[3:5, 6:7].mean())


def test_all_zero_weights_annihilate():
    out = apply_correction(_dwell([[1, 2], [3, 4]]), np.zeros((2, 2)))
    assert np.all(out.values == 0)


def test_unit_weights_are_identity():
    dwell = _dwell([[1.5, 2], [3, 4]])
    out = apply_correction(dwell, np.ones((2, 2)))
    np.testing.assert_array_equal(out.values, dwell.dwell)


def test_elementwise_product():
    out = apply_correction(_dwell([[2, 4], [6, 8]]), np.array([[0, 0.5], [1, 0.25]]))
    assert out.values.tolist() == [[0, 2], [6, 2]]


def test_dimension_mismatch_names_both_shapes():
    with pytest.raises(DimensionMismatch) as exc:
        apply_correction(_dwell(np.zeros((2, 3))), np.zeros((3, 2)))
    assert "(2, 3)" in str(exc.value) and "(3, 2)" in str(exc.value)


def test_zero_weight_cells_are_zero_and_values_never_exceed_dwell(rng):
    for _ in range(20):
        dwell, weights = _random_pair(rng)
        out = apply_correction(dwell, weights)
        assert np.all(out.values[weights == 0] == 0)
        assert np.all(out.values <= dwell.dwell)
        assert out.total() <= dwell.total()


def test_byte_scale_weights_are_metric_neutral(rng):
    for _ in range(20):
        dwell, weights = _random_pair(rng)
        reference = rng.random(weights.shape)
        unit = apply_correction(dwell, weights).values
        scaled = apply_correction(dwell, 255.0 * weights).values
        np.testing.assert_allclose(scaled, 255.0 * unit)

        a, b = center_of_gravity(unit), center_of_gravity(scaled)
        assert a.x == pytest.approx(b.x, abs=1e-9)
        assert a.y == pytest.approx(b.y, abs=1e-9)
        assert pearson(unit, reference) == pytest.approx(pearson(scaled, reference), abs=1e-9)
        assert np.argmax(unit) == np.argmax(scaled)


def test_reapplying_support_indicator_changes_nothing(rng):
    dwell, weights = _random_pair(rng)
    once = apply_correction(dwell, weights)
    twice = apply_correction(_dwell(once.values), (weights > 0).astype(np.float64))
    np.testing.assert_array_equal(twice.values, once.values)


def test_correct_downsamples_to_the_dwell_grid():
    bits = np.zeros((4, 6))
    bits[:2, :2] = math.log2(9)
    em = EntropyMap(bits=bits, window=3)
    dwell = _dwell(np.full((2, 3), 100.0), cell_size=2)
    out = correct(dwell, em)
    assert out.cell_size == 2
    assert out.values.tolist() == [[100.0, 0.0, 0.0], [0.0, 0.0, 0.0]]
