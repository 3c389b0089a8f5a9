# adoptlab/model/__init__.py

from .params import ModelParams, TrustParams, assumption_violations
from .state import SimplexState, FullState, CORNERS
from .payoffs import (
    effective_adoption,
    logistic,
    systemic_benefit,
    systemic_benefit_slope,
    disruption_cost,
    payoffs,
    payoff_arrays,
    payoff_advantage,
    mean_fitness,
    apply_rho,
)

__all__ = [
    "ModelParams",
    "TrustParams",
    "assumption_violations",
    "SimplexState",
    "FullState",
    "CORNERS",
    "effective_adoption",
    "logistic",
    "systemic_benefit",
    "systemic_benefit_slope",
    "disruption_cost",
    "payoffs",
    "payoff_arrays",
    "payoff_advantage",
    "mean_fitness",
    "apply_rho",
]
