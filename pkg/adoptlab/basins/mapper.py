# adoptlab/basins/mapper.py

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence
import numpy as np
import pandas as pd
from pydantic import Field
from ..base.config import StrictModel
from ..model.params import ModelParams
from ..dynamics.config import IntegrationConfig
from ..dynamics.integrator import integrate_batch
from ..exceptions import ConfigurationError, PropertyViolationError
from .grid import SimplexGridGeneration
import logging

logger = logging.getLogger('adoptlab.basins.mapper')

BASIN_COLUMNS = ["xG", "xP", "label", "timeToConverge"]
SWEEP_VARIABLES = ("psiDev", "psiG", "psiP", "alpha", "B")
G_SIDE_PROBES = (0.8, 0.9)
P_SIDE_PROBES = (0.1, 0.2, 0.3)


class BasinConfig(StrictModel):
    """Lattice and worker settings for basin mapping."""
    resolution: int = Field(200, ge=1, description="Lattice points per simplex edge.")
    workers: int = Field(1, ge=1, description="Worker threads integrating chunks.")
    chunkSize: int = Field(1024, ge=1, description="Lattice points per integration chunk.")
    edgeTolerance: float = Field(1e-4, gt=0, description="Bisection tolerance of the G-P edge crossing.")


@dataclass
class BasinMap:
    """
    Attractor label of every lattice point at frozen cost.

    Labels are 'G', 'P' or 'Unclassified' (no corner reached, or the R saddle).
    """
    resolution: int
    points: np.ndarray
    labels: np.ndarray
    times: np.ndarray
    weights: np.ndarray
    separatrix: np.ndarray
    edgeCrossing: Optional[float] = None
    measures: Dict[str, float] = field(default_factory=dict)

    @property
    def measureG(self) -> float:
        return self.measures["G"]

    @property
    def measureP(self) -> float:
        return self.measures["P"]

    @property
    def measureUnclassified(self) -> float:
        return self.measures["Unclassified"]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "xG": self.points[:, 0],
            "xP": self.points[:, 1],
            "label": self.labels,
            "timeToConverge": self.times,
        }, columns=BASIN_COLUMNS)

    def separatrix_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.separatrix, columns=["xG", "xP", "xR"])

    def summary(self) -> Dict[str, float]:
        return {
            "resolution": self.resolution,
            "measureG": self.measureG,
            "measureP": self.measureP,
            "measureUnclassified": self.measureUnclassified,
            "unclassifiedCells": int(np.sum(self.labels == "Unclassified")),
            "edgeCrossing": np.nan if self.edgeCrossing is None else self.edgeCrossing,
        }


def _basin_labels(raw: np.ndarray) -> np.ndarray:
    out = raw.copy()
    out[(out != "G") & (out != "P")] = "Unclassified"
    return out


def _edge_label(x: float, params: ModelParams, c: float, config: IntegrationConfig, coordination: bool) -> str:
    raw = integrate_batch(np.array([[x, 1.0 - x, 0.0]]), params, c, config, coordination).labels
    return _basin_labels(raw)[0]


def refine_edge_crossing(
    lo: float,
    hi: float,
    params: ModelParams,
    c: float,
    config: IntegrationConfig,
    coordination: bool = False,
    tol: float = 1e-4,
) -> Optional[float]:
    """
    Bisect between two G–P edge starts with different labels.

    Returns None when a probe is unclassified.
    """
    lo_label = _edge_label(lo, params, c, config, coordination)
    hi_label = _edge_label(hi, params, c, config, coordination)
    if "Unclassified" in (lo_label, hi_label) or lo_label == hi_label:
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        label = _edge_label(mid, params, c, config, coordination)
        if label == "Unclassified":
            return mid
        if label == lo_label:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def map_basins(
    params: ModelParams,
    c: Optional[float] = None,
    resolution: Optional[int] = None,
    config: Optional[IntegrationConfig] = None,
    basin_config: Optional[BasinConfig] = None,
    coordination: bool = False,
    refine_edge: bool = True,
) -> BasinMap:
    """
    Label every lattice point by the corner its frozen-cost trajectory reaches.

    Lattice points are integrated in fixed-size chunks, possibly on several
    threads; chunks are reassembled in lattice order so the map does not
    depend on the number of workers. The separatrix is the set of midpoints
    between neighbouring G and P points ordered by xR, preceded by the
    bisected G–P edge crossing.

    Args:
        params (ModelParams): Model parameters.
        c (Optional[float]): Frozen cost (defaults to c0).
        resolution (Optional[int]): Overrides ``basin_config.resolution``.
        config (Optional[IntegrationConfig]): Integration settings.
        basin_config (Optional[BasinConfig]): Lattice and worker settings.
        coordination (bool): Include coordination payoffs.
        refine_edge (bool): Bisect the G–P edge crossing of the separatrix.

    Returns:
        BasinMap: Labels, convergence times, measures and separatrix.
    """
    params = params.resolved()
    basin_config = basin_config or BasinConfig()
    config = config or IntegrationConfig()
    c = params.c0 if c is None else c
    res = resolution or basin_config.resolution
    grid = SimplexGridGeneration(res)
    points = grid.points()
    weights = grid.weights()
    size = basin_config.chunkSize
    chunks = [points[s:s + size] for s in range(0, points.shape[0], size)]
    logger.debug(f"Mapping basins: {points.shape[0]} points in {len(chunks)} chunks on {basin_config.workers} workers")

    def run(chunk: np.ndarray):
        return integrate_batch(chunk, params, c, config, coordination)

    if basin_config.workers > 1:
        with ThreadPoolExecutor(max_workers=basin_config.workers) as pool:
            results = list(pool.map(run, chunks))
    else:
        results = [run(chunk) for chunk in chunks]

    labels = _basin_labels(np.concatenate([r.labels for r in results]))
    times = np.concatenate([r.times for r in results])
    measures = {name: float(weights[labels == name].sum()) for name in ("G", "P", "Unclassified")}

    pairs = grid.neighbours()
    a, b = labels[pairs[:, 0]], labels[pairs[:, 1]]
    boundary = pairs[((a == "G") & (b == "P")) | ((a == "P") & (b == "G"))]
    mids = 0.5 * (points[boundary[:, 0]] + points[boundary[:, 1]])
    mids = mids[np.lexsort((mids[:, 0], mids[:, 2]))] if mids.size else np.empty((0, 3))

    edge_crossing = None
    edge = grid.edge_gp()
    edge_labels = labels[edge]
    for k in range(edge.size - 1 if refine_edge else 0):
        if {edge_labels[k], edge_labels[k + 1]} == {"G", "P"}:
            edge_crossing = refine_edge_crossing(
                points[edge[k], 0], points[edge[k + 1], 0], params, c, config, coordination,
                basin_config.edgeTolerance,
            )
            break
    if edge_crossing is not None:
        head = np.array([[edge_crossing, 1.0 - edge_crossing, 0.0]])
        mids = np.vstack((head, mids))

    unclassified = int(np.sum(labels == "Unclassified"))
    if unclassified:
        logger.warning(f"{unclassified} of {labels.size} lattice points did not reach G or P")
    logger.info(f"Basin map at resolution {res}: measureG={measures['G']:.4f}, measureP={measures['P']:.4f}")
    return BasinMap(
        resolution=res,
        points=points,
        labels=labels,
        times=times,
        weights=weights,
        separatrix=mids,
        edgeCrossing=edge_crossing,
        measures=measures,
    )


def probe_times(
    params: ModelParams,
    c: float,
    config: IntegrationConfig,
    coordination: bool = True,
) -> Dict[str, float]:
    """
    Mean convergence time of fixed G–P edge probes on each side of the separatrix.

    Only probes reaching their expected corner contribute; NaN if none do.
    """
    out = {}
    for corner, probes in (("G", G_SIDE_PROBES), ("P", P_SIDE_PROBES)):
        states = np.array([[x, 1.0 - x, 0.0] for x in probes])
        result = integrate_batch(states, params, c, config, coordination)
        hits = result.times[result.labels == corner]
        out[corner] = float(hits.mean()) if hits.size else float("nan")
    return out


@dataclass
class BasinSweep:
    """Basin summaries along a parameter sweep and the monotonicity checks."""
    table: pd.DataFrame
    checks: Dict[str, bool]


def _non_increasing(values: Sequence[float], tol: float = 1e-12) -> bool:
    v = np.asarray(values, dtype=float)
    return bool(np.all(np.diff(v) <= tol))


def basin_measure_sweep(
    params: ModelParams,
    sweep_var: str,
    values: Sequence[float],
    c: Optional[float] = None,
    config: Optional[IntegrationConfig] = None,
    basin_config: Optional[BasinConfig] = None,
    coordination: bool = True,
    strict: bool = True,
) -> BasinSweep:
    """
    One basin summary per value of ``sweep_var``.

    Checks: measureG non-increasing when sweeping psiDev; mean time to G of
    the G-side probes decreasing when sweeping psiG or psiP; mean time to P
    of the P-side probes decreasing when sweeping psiDev. Without ``strict``
    a failed check is logged and recorded in :attr:`BasinSweep.checks`.

    Raises:
        ConfigurationError: For an unknown sweep variable.
        PropertyViolationError: In strict mode, when a check fails.
    """
    if sweep_var not in SWEEP_VARIABLES:
        error_msg = f"Unknown sweep variable '{sweep_var}'; expected one of {SWEEP_VARIABLES}."
        logger.error(error_msg)
        raise ConfigurationError(error_msg)
    config = config or IntegrationConfig()
    rows = []
    for value in values:
        point = params.model_copy(update={sweep_var: float(value)})
        cost = point.c0 if c is None else c
        bmap = map_basins(point, cost, None, config, basin_config, coordination, refine_edge=False)
        probes = probe_times(point, cost, config, coordination)
        row = {"variable": sweep_var, "value": float(value)}
        row.update(bmap.summary())
        row["meanTimeToG"] = probes["G"]
        row["meanTimeToP"] = probes["P"]
        rows.append(row)
    table = pd.DataFrame(rows)

    checks: Dict[str, bool] = {}
    if sweep_var == "psiDev":
        checks["measureG_non_increasing"] = _non_increasing(table["measureG"])
        checks["timeToP_decreasing"] = bool(np.all(np.diff(table["meanTimeToP"]) < 0))
    if sweep_var in ("psiG", "psiP"):
        checks["timeToG_decreasing"] = bool(np.all(np.diff(table["meanTimeToG"]) < 0))
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        error_msg = f"Basin sweep over {sweep_var}: checks failed {failed}"
        if strict:
            logger.error(error_msg)
            raise PropertyViolationError(error_msg)
        logger.warning(error_msg)
    logger.info(f"Basin sweep over {sweep_var} with {len(rows)} points finished: {checks}")
    return BasinSweep(table=table, checks=checks)
