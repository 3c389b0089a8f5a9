# adoptlab/dynamics/trajectory.py

from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import numpy as np
import pandas as pd
from ..model.params import ModelParams
from ..model.state import FullState, SimplexState
import logging

logger = logging.getLogger('adoptlab.dynamics.trajectory')

TRAJECTORY_COLUMNS = ["t", "xG", "xP", "xR", "e", "c", "alpha", "phase"]
TYPES = ("Type1", "Type2", "Type3", "Type4", "Unclassified")


@dataclass
class Trajectory:
    """
    Time-stamped samples of the coupled state with threshold events.

    Samples are stored column-wise; :attr:`samples` materialises them as
    :class:`FullState` records on demand.
    """
    times: np.ndarray
    states: np.ndarray
    costs: np.ndarray
    beliefs: np.ndarray
    effective: np.ndarray
    eStar: float
    events: List[Tuple[float, str]] = field(default_factory=list)
    excursions: List[Tuple[float, float]] = field(default_factory=list)
    converged: Optional[str] = None
    classification: str = "Unclassified"
    steps: int = 0
    minRawFrequency: float = 0.0

    @property
    def samples(self) -> List[FullState]:
        return [self._state_at(i) for i in range(len(self.times))]

    @property
    def finalState(self) -> FullState:
        return self._state_at(len(self.times) - 1)

    def _state_at(self, i: int) -> FullState:
        return FullState(
            simplex=SimplexState.from_array(self.states[i]),
            c=float(self.costs[i]),
            alphaBelief=float(self.beliefs[i]),
            t=float(self.times[i]),
        )

    def to_frame(self) -> pd.DataFrame:
        """Samples as a DataFrame with the documented trajectory columns."""
        return pd.DataFrame({
            "t": self.times,
            "xG": self.states[:, 0],
            "xP": self.states[:, 1],
            "xR": self.states[:, 2],
            "e": self.effective,
            "c": self.costs,
            "alpha": self.beliefs,
            "phase": np.where(self.effective > self.eStar, "in", "out"),
        }, columns=TRAJECTORY_COLUMNS)


def excursions_from_events(events: List[Tuple[float, str]], t0: float, t_end: float, start_above: bool) -> List[Tuple[float, float]]:
    """
    Intervals with e > e*, including one open at ``t0`` or left open at ``t_end``.
    """
    intervals = []
    start = t0 if start_above else None
    for t, kind in events:
        if kind == "cross_up":
            start = t
        elif start is not None:
            intervals.append((start, t))
            start = None
    if start is not None:
        intervals.append((start, t_end))
    return intervals


def classify_trajectory(traj: Trajectory, params: ModelParams) -> str:
    """
    Classify a finished trajectory into one of the four trajectory types.

    Type1: no excursion, converged to P. Type2: at least one excursion,
    converged to P with a reduced cost. Type3: converged to G. Type4: at
    least two excursions before converging to G. Anything else, including
    convergence to the R saddle, is Unclassified. That covers a run that
    converges to P after an excursion with c still at c0, which happens when
    the cost ratchet is switched off (costDynamics=False).
    """
    n_exc = len(traj.excursions)
    if traj.converged == "P":
        if n_exc == 0:
            return "Type1"
        if traj.costs[-1] < params.c0:
            return "Type2"
        return "Unclassified"
    if traj.converged == "G":
        return "Type4" if n_exc >= 2 else "Type3"
    return "Unclassified"
