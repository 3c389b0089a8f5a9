# adoptlab/trust/__init__.py

from .game import (
    TrustReport,
    alpha_actual_at,
    beta_star,
    default_delta_alpha,
    optimal_reneging,
    organisation_payoff,
    reneging_sensitivity,
    reputational_cost,
    theta_star,
    trust_report,
    will_defect,
)
from .trap import detect_trust_trap, trust_trajectory

__all__ = [
    "TrustReport",
    "alpha_actual_at",
    "beta_star",
    "default_delta_alpha",
    "optimal_reneging",
    "organisation_payoff",
    "reneging_sensitivity",
    "reputational_cost",
    "theta_star",
    "trust_report",
    "will_defect",
    "detect_trust_trap",
    "trust_trajectory",
]
