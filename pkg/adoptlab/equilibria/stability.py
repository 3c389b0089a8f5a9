# adoptlab/equilibria/stability.py

from typing import Dict, List, Optional, Tuple
import numpy as np
from pydantic import BaseModel, model_validator
from ..model.params import ModelParams
from ..model.payoffs import payoffs, systemic_benefit, systemic_benefit_slope
from ..model.state import SimplexState
from ..dynamics.config import DynamicsFlags, IntegrationConfig
from ..dynamics.integrator import initial_state, integrate, integrate_batch
from ..exceptions import NoRootError
from .tipping import tipping_point
import logging

logger = logging.getLogger('adoptlab.equilibria.stability')

CORNER_ORDER = ("G", "P", "R")
KINDS = {"G": "corner_G", "P": "corner_P", "R": "corner_R"}


def classify_eigenvalues(eigenvalues: Tuple[float, float]) -> str:
    """'stable' if all negative, 'unstable' if all positive, else 'saddle'."""
    if all(v < 0 for v in eigenvalues):
        return "stable"
    if all(v > 0 for v in eigenvalues):
        return "unstable"
    return "saddle"


class EquilibriumReport(BaseModel):
    """
    Location, transverse eigenvalues and stability of one rest point.
    """
    location: SimplexState
    kind: str
    eigenvalues: Tuple[float, float]
    stability: str
    conditionChecks: Dict[str, bool]

    @model_validator(mode="after")
    def check_consistency(self) -> "EquilibriumReport":
        if self.stability != classify_eigenvalues(self.eigenvalues):
            raise ValueError(f"stability '{self.stability}' contradicts eigenvalues {self.eigenvalues}")
        return self

    def row(self) -> Dict[str, object]:
        """Flat record for the equilibria table."""
        record = {
            "kind": self.kind,
            "xG": self.location.xG,
            "xP": self.location.xP,
            "xR": self.location.xR,
            "eigenvalue1": self.eigenvalues[0],
            "eigenvalue2": self.eigenvalues[1],
            "stability": self.stability,
        }
        record.update(self.conditionChecks)
        return record


def condition_checks(params: ModelParams, c: float) -> Dict[str, bool]:
    """
    The corner-stability and bistability inequalities, step and smoothed forms.
    """
    gap = (c - params.cP) + (params.bP - params.bG)
    smoothed_p = params.alpha * float(systemic_benefit(params.gamma, params)) + params.bG - c
    return {
        "R_saddle": params.bP > params.cP,
        "P_stable_step": params.bP > params.cP and params.gamma < params.eStar,
        "P_stable_smoothed": params.bP > params.cP and smoothed_p < params.bP - params.cP,
        "G_beats_P": params.alpha * params.B + params.bG - c > params.bP - params.cP,
        "G_beats_R": params.alpha * params.B + params.bG > c,
        "bistable": params.alpha * params.B > gap,
    }


def corner_eigenvalues(
    params: ModelParams,
    c: float,
    coordination: bool = False,
    alpha: Optional[float] = None,
) -> Dict[str, Dict[str, float]]:
    """
    Growth rate toward each other strategy at each corner: fⱼ − fᵢ at corner i.
    """
    alpha = params.alpha if alpha is None else alpha
    result = {}
    for i, name in enumerate(CORNER_ORDER):
        f = payoffs(SimplexState.corner(name), c, alpha, params, coordination)
        result[name] = {other: f[j] - f[i] for j, other in enumerate(CORNER_ORDER) if j != i}
    return result


def corner_stability(
    params: ModelParams,
    c: Optional[float] = None,
    coordination: bool = False,
) -> List[EquilibriumReport]:
    """
    Linear stability of the three corners at frozen cost ``c`` (default c0).

    Returns:
        List[EquilibriumReport]: Reports for G, P and R in that order.
    """
    c = params.c0 if c is None else c
    checks = condition_checks(params, c)
    rates = corner_eigenvalues(params, c, coordination)
    reports = []
    for name in CORNER_ORDER:
        eig = tuple(rates[name].values())
        reports.append(EquilibriumReport(
            location=SimplexState.corner(name),
            kind=KINDS[name],
            eigenvalues=eig,
            stability=classify_eigenvalues(eig),
            conditionChecks=checks,
        ))
        logger.debug(f"Corner {name}: eigenvalues {eig} -> {reports[-1].stability}")
    return reports


def edge_equilibrium(params: ModelParams, c: Optional[float] = None, coordination: bool = False) -> EquilibriumReport:
    """
    The interior G–P edge rest point at the tipping point.

    The eigenvalue along the edge is x(1−x)·d(fG − fP)/dx and the one toward
    R is −fP there.

    Raises:
        NoRootError: If there is no interior rest point on the edge.
    """
    c = params.c0 if c is None else c
    x = tipping_point(params, c, coordination)
    e = params.gamma + (1.0 - params.gamma) * x
    slope = params.alpha * float(systemic_benefit_slope(e, params)) * (1.0 - params.gamma)
    if coordination:
        slope += params.psiG + params.psiDev + params.psiP
    _, fP, _ = payoffs(SimplexState(xG=x, xP=1.0 - x, xR=0.0), c, params.alpha, params, coordination)
    eig = (x * (1.0 - x) * slope, -fP)
    return EquilibriumReport(
        location=SimplexState(xG=x, xP=1.0 - x, xR=0.0),
        kind="edge_GP_interior",
        eigenvalues=eig,
        stability=classify_eigenvalues(eig),
        conditionChecks=condition_checks(params, c),
    )


def equilibrium_reports(params: ModelParams, c: Optional[float] = None, coordination: bool = False) -> List[EquilibriumReport]:
    """Corner reports plus the edge rest point when it exists."""
    reports = corner_stability(params, c, coordination)
    try:
        reports.append(edge_equilibrium(params, c, coordination))
    except NoRootError:
        logger.info("No interior G-P rest point; reporting corners only.")
    return reports


def perturbation_check(
    params: ModelParams,
    c: Optional[float] = None,
    eps: float = 1e-3,
    horizon: float = 0.5,
    step: float = 0.01,
) -> Dict[str, bool]:
    """
    Compare eigenvalue signs with direct simulation.

    Each corner is moved ``eps`` toward each other strategy and integrated at
    frozen cost for ``horizon``; the perturbed share must grow exactly when
    the corresponding eigenvalue is positive.

    Returns:
        Dict[str, bool]: Agreement per 'i->j' direction.
    """
    c = params.c0 if c is None else c
    rates = corner_eigenvalues(params, c)
    config = IntegrationConfig(stepSize=step, tMax=horizon, stopAtCorner=False)
    flags = DynamicsFlags(costDynamics=False)
    agreement = {}
    for i, name in enumerate(CORNER_ORDER):
        for j, other in enumerate(CORNER_ORDER):
            if i == j:
                continue
            x = [0.0, 0.0, 0.0]
            x[i], x[j] = 1.0 - eps, eps
            traj = integrate(initial_state(params, *x, c=c), params, config, flags)
            grew = traj.states[-1, j] > eps
            agreement[f"{name}->{other}"] = grew == (rates[name][other] > 0)
    if not all(agreement.values()):
        logger.warning(f"Perturbation check disagrees with eigenvalues: {agreement}")
    return agreement


def random_assumption_params(rng: np.random.Generator, count: int, min_rate: float = 0.05,
                             base: Optional[ModelParams] = None) -> List[ModelParams]:
    """
    Draw parameter sets satisfying the cost and benefit ordering.

    Draws whose corner eigenvalues come within ``min_rate`` of zero are
    rejected so that a short perturbation run resolves the sign.
    """
    base = base or ModelParams()
    drawn: List[ModelParams] = []
    while len(drawn) < count:
        c0 = rng.uniform(0.5, 2.0)
        cP = rng.uniform(0.05, 0.9 * c0)
        bP = rng.uniform(cP + 0.05, cP + 1.0)
        bG = rng.uniform(0.0, bP - 0.05)
        candidate = base.model_copy(update={
            "c0": c0, "cP": cP, "bP": bP, "bG": bG,
            "gamma": rng.uniform(0.0, 0.9),
            "eStar": rng.uniform(0.2, 0.9),
            "alpha": rng.uniform(0.05, 0.95),
            "B": rng.uniform(0.5, 3.0),
            "k": 25.0,
        })
        params = ModelParams.model_validate(candidate.model_dump())
        rates = corner_eigenvalues(params, params.c0)
        if min(abs(v) for corner in rates.values() for v in corner.values()) < min_rate:
            continue
        drawn.append(params)
    return drawn


def simulated_edge_separatrix(
    params: ModelParams,
    c: Optional[float] = None,
    config: Optional[IntegrationConfig] = None,
    tol: float = 1e-4,
) -> float:
    """
    Separatrix on the G–P edge by bisection over the initial genuine share.

    Returns:
        float: Midpoint of the final bracket between a P-bound and a G-bound start.

    Raises:
        NoRootError: If the two ends of the edge reach the same corner.
    """
    c = params.c0 if c is None else c
    config = config or IntegrationConfig()

    def label(x: float) -> str:
        return integrate_batch(np.array([[x, 1.0 - x, 0.0]]), params, c, config).labels[0]

    lo, hi = 1e-6, 1.0 - 1e-6
    if label(lo) == label(hi):
        raise NoRootError("Both ends of the G-P edge reach the same corner.", side="above" if label(lo) == "G" else "below")
    lo_label = label(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if label(mid) == lo_label:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
