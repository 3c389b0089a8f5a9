# adoptlab/policy/pilots.py

"""
Repeated pilot and intervention-ordering experiments.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
import pandas as pd
from pydantic import BaseModel
from ..model.params import ModelParams, TrustParams
from ..model.state import FullState
from ..dynamics.config import DynamicsFlags, IntegrationConfig
from ..dynamics.integrator import integrate_batch
from ..dynamics.trajectory import Trajectory
from ..equilibria.tipping import tipping_point
from ..trust.game import theta_star
from ..exceptions import NoRootError
from .scenario import Intervention, PolicyScenario, run_scenario
import logging

logger = logging.getLogger('adoptlab.policy.pilots')

CANONICAL_ORDER = ("trustFix", "culturePrep", "seed", "embedSupport")


def pilot_schedule(count: int, level: float, duration: float, gap: float, first: float = 0.0) -> List[Intervention]:
    """``count`` pilots raising xG to ``level`` for ``duration``, separated by free ``gap``s."""
    return [
        Intervention(kind="pilot", startTime=first + i * (duration + gap), duration=duration, magnitude=level)
        for i in range(count)
    ]


def _tipping_or_none(params: ModelParams, c: float) -> Optional[float]:
    try:
        return tipping_point(params, c)
    except NoRootError:
        return None


def _index_at(traj: Trajectory, t: float) -> int:
    return int(np.argmin(np.abs(traj.times - t)))


@dataclass
class RatchetReport:
    """A repeated-pilot run and the cost left after each pilot."""
    trajectory: Trajectory
    table: pd.DataFrame

    @property
    def costs_decreasing(self) -> bool:
        return bool(np.all(np.diff(self.table["cost"].to_numpy()) < 0))

    @property
    def tipping_non_increasing(self) -> bool:
        values = self.table["tippingPoint"].to_numpy(dtype=float)
        finite = values[np.isfinite(values)]
        return bool(np.all(np.diff(finite) <= 1e-12))


def ratchet_pilots(
    params: ModelParams,
    initial: FullState,
    count: int = 3,
    level: float = 0.44,
    duration: float = 0.4,
    gap: float = 4.0,
    config: Optional[IntegrationConfig] = None,
    flags: Optional[DynamicsFlags] = None,
    tp: Optional[TrustParams] = None,
) -> RatchetReport:
    """
    Repeated pilots with coupled cost; records the cost and tipping point after each pilot.
    """
    flags = flags or DynamicsFlags()
    schedule = pilot_schedule(count, level, duration, gap)
    scenario = PolicyScenario(schedule=schedule, initial=initial, params=params,
                              tp=tp or TrustParams(), flags=flags)
    traj, _, _ = run_scenario(scenario, config)
    resolved = params.resolved()
    rows = []
    for k, pilot in enumerate(schedule, start=1):
        if pilot.endTime > traj.times[-1] + 1e-9:
            break
        cost = float(traj.costs[_index_at(traj, pilot.endTime)])
        x_star = _tipping_or_none(resolved, cost)
        rows.append({"pilot": k, "endTime": pilot.endTime, "cost": cost,
                     "tippingPoint": np.nan if x_star is None else x_star})
    table = pd.DataFrame(rows, columns=["pilot", "endTime", "cost", "tippingPoint"])
    logger.info(f"Ratchet pilots: {traj.classification} after {len(traj.excursions)} excursions")
    return RatchetReport(trajectory=traj, table=table)


class RepeatedPilotReport(BaseModel):
    """Long-run effect of failed pilots on a probe just below the original tipping point."""
    thetaStar: float
    decayToLearning: float
    ratchetBeneficial: bool
    costAfter: float
    beliefAfter: float
    tippingBefore: Optional[float]
    tippingAfter: Optional[float]
    probeStart: float
    probeFinalXG: float
    baselineFinalXG: float
    improved: bool


def repeated_pilots(
    params: ModelParams,
    tp: TrustParams,
    count: int = 3,
    level: float = 0.48,
    duration: float = 0.2,
    gap: float = 0.1,
    probe_offset: float = 0.01,
    config: Optional[IntegrationConfig] = None,
) -> RepeatedPilotReport:
    """
    Failed pilots lower the cost but erode beliefs; which effect wins?

    The pilots run with cost and belief dynamics on, starting from belief
    alphaHat on the G–P edge. Afterwards a probe starting ``probe_offset``
    below the original tipping point is integrated with the accumulated
    cost and belief frozen, and compared against the same probe without
    pilots. ``improved`` is true when the probe now ends closer to G.

    Raises:
        NoRootError: If the original parameters have no tipping point.
    """
    params = params.resolved()
    config = config or IntegrationConfig()
    theta, beneficial = theta_star(params, tp)
    x0 = tipping_point(params, params.c0)

    schedule = pilot_schedule(count, level, duration, gap)
    end = schedule[-1].endTime
    run_config = config.model_copy(update={"tMax": end, "stopAtCorner": False})
    start = FullState.initial(level, 1.0 - level, 0.0, c=params.c0, alphaBelief=tp.alphaHat)
    scenario = PolicyScenario(schedule=schedule, initial=start, params=params, tp=tp,
                              flags=DynamicsFlags(trust=True))
    traj, _, _ = run_scenario(scenario, run_config)
    cost, belief = float(traj.costs[-1]), float(traj.beliefs[-1])

    probe_x = max(0.0, x0 - probe_offset)
    probe = np.array([[probe_x, 1.0 - probe_x, 0.0]])
    after = integrate_batch(probe, params, cost, config, alpha=belief).final[0, 0]
    before = integrate_batch(probe, params, params.c0, config, alpha=tp.alphaHat).final[0, 0]
    tipping_after = _tipping_or_none(params.model_copy(update={"alpha": belief}), cost)
    ratio = math.inf if params.lam == 0 else params.delta / params.lam
    report = RepeatedPilotReport(
        thetaStar=theta,
        decayToLearning=ratio,
        ratchetBeneficial=beneficial,
        costAfter=cost,
        beliefAfter=belief,
        tippingBefore=x0,
        tippingAfter=tipping_after,
        probeStart=probe_x,
        probeFinalXG=float(after),
        baselineFinalXG=float(before),
        improved=bool(after > before + 1e-6),
    )
    logger.info(f"Repeated pilots with delta/lambda={ratio:.4f} vs theta*={theta:.4f}: improved={report.improved}")
    return report


def sequencing_scenario(
    order: Sequence[str],
    params: ModelParams,
    tp: TrustParams,
    initial: FullState,
    slot: float = 2.0,
    seed_magnitude: float = 0.6,
    culture_magnitude: float = 1.0,
    embed_magnitude: float = 1.0,
    embed_duration: float = 20.0,
    horizon: float = 200.0,
) -> PolicyScenario:
    """
    The four-instrument programme with the instruments placed in ``order``.

    Instrument k starts at k·slot; trustFix and culturePrep stay in force to
    the horizon, the seed is instantaneous and embedding support lasts
    ``embed_duration``. Magnitudes and durations do not depend on the order.
    """
    shapes: Dict[str, Tuple[float, float]] = {
        "trustFix": (horizon, 0.0),
        "culturePrep": (horizon, culture_magnitude),
        "seed": (0.0, seed_magnitude),
        "embedSupport": (embed_duration, embed_magnitude),
    }
    schedule = []
    for k, kind in enumerate(order):
        duration, magnitude = shapes[kind]
        schedule.append(Intervention(kind=kind, startTime=k * slot, duration=duration, magnitude=magnitude))
    return PolicyScenario(schedule=schedule, initial=initial, params=params, tp=tp,
                          flags=DynamicsFlags(trust=True, coordination=True))


def sequencing_experiment(
    params: ModelParams,
    tp: TrustParams,
    initial: FullState,
    orders: Optional[Sequence[Sequence[str]]] = None,
    config: Optional[IntegrationConfig] = None,
) -> pd.DataFrame:
    """
    Run the programme in several orders with an identical budget and report where each ends.
    """
    orders = orders or [CANONICAL_ORDER, ("seed", "trustFix", "culturePrep", "embedSupport")]
    rows = []
    for order in orders:
        traj, report, _ = run_scenario(sequencing_scenario(order, params, tp, initial), config)
        rows.append({
            "order": ">".join(order),
            "converged": traj.converged,
            "classification": traj.classification,
            "finalXG": float(traj.states[-1, 0]),
            "effectiveAdoption": report.effectiveAdoption,
        })
    return pd.DataFrame(rows, columns=["order", "converged", "classification", "finalXG", "effectiveAdoption"])
