# adoptlab/equilibria/__init__.py

from .stability import (
    EquilibriumReport,
    classify_eigenvalues,
    condition_checks,
    corner_eigenvalues,
    corner_stability,
    edge_equilibrium,
    equilibrium_reports,
    perturbation_check,
    random_assumption_params,
    simulated_edge_separatrix,
)
from .tipping import (
    ComparativeStatics,
    closed_form_gamma_slope,
    comparative_statics,
    edge_gap,
    gamma_sweep,
    tipping_point,
    tipping_residual,
)
from .bifurcation import (
    RhoCritical,
    rho_critical,
    rho_critical_closed_form,
    rho_critical_sensitivities,
    rho_sweep,
)

__all__ = [
    "EquilibriumReport",
    "classify_eigenvalues",
    "condition_checks",
    "corner_eigenvalues",
    "corner_stability",
    "edge_equilibrium",
    "equilibrium_reports",
    "perturbation_check",
    "random_assumption_params",
    "simulated_edge_separatrix",
    "ComparativeStatics",
    "closed_form_gamma_slope",
    "comparative_statics",
    "edge_gap",
    "gamma_sweep",
    "tipping_point",
    "tipping_residual",
    "RhoCritical",
    "rho_critical",
    "rho_critical_closed_form",
    "rho_critical_sensitivities",
    "rho_sweep",
]
