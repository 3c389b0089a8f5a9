# adoptlab/dynamics/__init__.py

from .config import IntegrationConfig, DynamicsFlags
from .rhs import StateDerivative, replicator_rhs, full_rhs, cost_decay_rate
from .trajectory import Trajectory, TRAJECTORY_COLUMNS, classify_trajectory
from .integrator import BatchResult, initial_state, integrate, integrate_batch, nearest_corner

__all__ = [
    "IntegrationConfig",
    "DynamicsFlags",
    "StateDerivative",
    "replicator_rhs",
    "full_rhs",
    "cost_decay_rate",
    "Trajectory",
    "TRAJECTORY_COLUMNS",
    "classify_trajectory",
    "BatchResult",
    "initial_state",
    "integrate",
    "integrate_batch",
    "nearest_corner",
]
