# tests/test_basins.py

import numpy as np
import pytest
from adoptlab.basins import (
    BASIN_COLUMNS,
    BasinConfig,
    SimplexGridGeneration,
    basin_measure_sweep,
    map_basins,
    probe_times,
)
from adoptlab.dynamics import IntegrationConfig
from adoptlab.equilibria import tipping_point
from adoptlab.exceptions import ConfigurationError, PropertyViolationError
from adoptlab.model import ModelParams

COARSE = IntegrationConfig(stepSize=0.05, tMax=150.0)


def test_grid_points_and_weights():
    grid = SimplexGridGeneration(4)
    points = grid.points()
    assert points.shape == (15, 3)
    np.testing.assert_allclose(points.sum(axis=1), 1.0)
    assert grid.weights().sum() == pytest.approx(1.0)
    edge = grid.edge_gp()
    assert np.all(points[edge, 2] == 0.0)
    assert np.all(np.diff(points[edge, 0]) > 0)
    # every interior point touches six triangles
    assert grid.weights().max() == pytest.approx(6.0 / (3.0 * 16))


def test_grid_neighbours_are_adjacent():
    grid = SimplexGridGeneration(5)
    points = grid.points()
    pairs = grid.neighbours()
    gaps = np.abs(points[pairs[:, 0]] - points[pairs[:, 1]]).max(axis=1)
    np.testing.assert_allclose(gaps, 0.2)


def test_grid_rejects_zero_resolution():
    with pytest.raises(ValueError):
        SimplexGridGeneration(0)


@pytest.fixture(scope="module")
def reference_map():
    return map_basins(ModelParams(), resolution=20, config=COARSE)


def test_measures_partition_the_simplex(reference_map):
    bmap = reference_map
    total = bmap.measureG + bmap.measureP + bmap.measureUnclassified
    assert total == pytest.approx(1.0)
    assert 0.0 < bmap.measureG < 1.0
    assert 0.0 < bmap.measureP < 1.0
    assert bmap.summary()["unclassifiedCells"] >= 1


def test_corner_labels(reference_map):
    frame = reference_map.to_frame()
    assert list(frame.columns) == BASIN_COLUMNS
    g = frame[(frame["xG"] == 1.0)]
    p = frame[(frame["xP"] == 1.0)]
    r = frame[(frame["xG"] == 0.0) & (frame["xP"] == 0.0)]
    assert g["label"].item() == "G"
    assert p["label"].item() == "P"
    assert r["label"].item() == "Unclassified"


def test_separatrix_starts_at_edge_crossing(ref, reference_map):
    assert reference_map.edgeCrossing == pytest.approx(tipping_point(ref), abs=1e-3)
    sep = reference_map.separatrix_frame()
    assert list(sep.columns) == ["xG", "xP", "xR"]
    assert sep["xR"].iloc[0] == 0.0
    assert np.all(np.diff(sep["xR"].to_numpy()) >= 0)


def test_worker_count_does_not_change_the_map(ref):
    one = map_basins(ref, resolution=12, config=COARSE, basin_config=BasinConfig(workers=1, chunkSize=17))
    many = map_basins(ref, resolution=12, config=COARSE, basin_config=BasinConfig(workers=3, chunkSize=17))
    np.testing.assert_array_equal(one.labels, many.labels)
    np.testing.assert_array_equal(one.times, many.times)
    assert one.measures == many.measures


def test_zero_coordination_reproduces_base_map(ref):
    base = map_basins(ref, resolution=10, config=COARSE, refine_edge=False)
    coordinated = map_basins(ref, resolution=10, config=COARSE, coordination=True, refine_edge=False)
    np.testing.assert_array_equal(base.labels, coordinated.labels)
    np.testing.assert_array_equal(base.times, coordinated.times)


def test_deviance_penalty_shrinks_genuine_basin(ref):
    sweep = basin_measure_sweep(ref, "psiDev", [0.0, 0.25, 0.5], config=COARSE,
                                basin_config=BasinConfig(resolution=16))
    assert list(sweep.table["value"]) == [0.0, 0.25, 0.5]
    assert sweep.checks["measureG_non_increasing"]
    assert sweep.checks["timeToP_decreasing"]


def test_sweep_against_the_deviance_ordering_fails(ref):
    values = [0.5, 0.0]
    with pytest.raises(PropertyViolationError):
        basin_measure_sweep(ref, "psiDev", values, config=COARSE, basin_config=BasinConfig(resolution=4))
    sweep = basin_measure_sweep(ref, "psiDev", values, config=COARSE,
                                basin_config=BasinConfig(resolution=4), strict=False)
    assert not sweep.checks["timeToP_decreasing"]
    assert len(sweep.table) == 2


def test_coordination_gain_speeds_up_genuine_convergence(ref):
    times = [probe_times(ref.model_copy(update={"psiG": v}), ref.c0, COARSE)["G"] for v in (0.0, 0.2, 0.4)]
    assert np.all(np.isfinite(times))
    assert times[0] > times[1] > times[2]


def test_unknown_sweep_variable(ref):
    with pytest.raises(ConfigurationError):
        basin_measure_sweep(ref, "delta", [0.1])
