# adoptlab/basins/__init__.py

from .grid import SimplexGridGeneration
from .mapper import (
    BASIN_COLUMNS,
    BasinConfig,
    BasinMap,
    BasinSweep,
    basin_measure_sweep,
    map_basins,
    probe_times,
    refine_edge_crossing,
)

__all__ = [
    "SimplexGridGeneration",
    "BASIN_COLUMNS",
    "BasinConfig",
    "BasinMap",
    "BasinSweep",
    "basin_measure_sweep",
    "map_basins",
    "probe_times",
    "refine_edge_crossing",
]
