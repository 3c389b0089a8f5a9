# adoptlab/trust/game.py

"""
The organisation's sharing decision and the repeated-game thresholds.
"""

import math
from typing import Dict, Optional, Tuple
from pydantic import BaseModel, model_validator
from ..model.params import ModelParams, TrustParams
from ..equilibria.tipping import tipping_point
from ..exceptions import AtBoundaryError, NoRootError, NumericalError
import logging

logger = logging.getLogger('adoptlab.trust.game')


class TrustReport(BaseModel):
    """Outcome of the trust game at one parameterisation."""
    alphaHat: float
    deltaOpt: float
    alphaActual: float
    betaStar: float
    willDefect: bool
    thetaStar: Optional[float] = None
    ratchetBeneficial: Optional[bool] = None

    @model_validator(mode="after")
    def check_split(self) -> "TrustReport":
        if not 0.0 <= self.deltaOpt <= self.alphaHat:
            raise ValueError(f"deltaOpt {self.deltaOpt} outside [0, {self.alphaHat}]")
        if abs(self.alphaActual - (self.alphaHat - self.deltaOpt)) > 1e-12:
            raise ValueError("alphaActual must equal alphaHat - deltaOpt")
        return self

    def record(self) -> Dict[str, object]:
        """Flat key-value record for scenario tables."""
        return self.model_dump()


def reputational_cost(tp: TrustParams, delta: float) -> float:
    """Quadratic reputational cost ½·kappaCoeff·Δ²."""
    return 0.5 * tp.kappaCoeff * delta * delta


def organisation_payoff(tp: TrustParams, alpha_actual: float) -> float:
    """Retained gain minus the reputational cost of sharing less than announced."""
    return (1.0 - alpha_actual) * tp.V - reputational_cost(tp, tp.alphaHat - alpha_actual)


def alpha_actual_at(tp: TrustParams, V: float) -> float:
    """Realised sharing when the systemic gain is ``V``."""
    return optimal_reneging(tp.model_copy(update={"V": V}))[1]


def optimal_reneging(tp: TrustParams) -> Tuple[float, float]:
    """
    Payoff-maximising reneging Δ and the resulting realised sharing.

    The first-order condition kappaCoeff·Δ = V is clamped to the feasible [0, alphaHat].

    Returns:
        Tuple[float, float]: (deltaOpt, alphaActual).
    """
    delta = min(max(tp.V / tp.kappaCoeff, 0.0), tp.alphaHat)
    return delta, tp.alphaHat - delta


def reneging_sensitivity(tp: TrustParams, rel_tol: float = 1e-6) -> float:
    """
    dΔ/dV = 1/kappaCoeff at an interior solution, cross-checked by central differences.

    Raises:
        AtBoundaryError: If the optimum is clamped at 0 or alphaHat.
        NumericalError: If the finite difference disagrees with the analytic value.
    """
    delta, _ = optimal_reneging(tp)
    if delta <= 0.0 or delta >= tp.alphaHat:
        error_msg = f"Optimal reneging {delta} is at the boundary of [0, {tp.alphaHat}]; derivative is 0 there."
        logger.error(error_msg)
        raise AtBoundaryError(error_msg)
    analytic = 1.0 / tp.kappaCoeff
    h = 1e-6 * max(tp.V, 1.0)
    h = min(h, 0.5 * tp.V, 0.5 * (tp.alphaHat * tp.kappaCoeff - tp.V))
    up = optimal_reneging(tp.model_copy(update={"V": tp.V + h}))[0]
    down = optimal_reneging(tp.model_copy(update={"V": tp.V - h}))[0]
    numeric = (up - down) / (2.0 * h)
    if abs(numeric - analytic) > rel_tol * analytic:
        error_msg = f"Finite-difference sensitivity {numeric} disagrees with 1/kappaCoeff = {analytic}."
        logger.error(error_msg)
        raise NumericalError(error_msg)
    return analytic


def beta_star(V: float, kappaLinear: float) -> float:
    """Discount factor above which the organisation keeps its commitment, V/(V+κ)."""
    return V / (V + kappaLinear)


def will_defect(V: float, kappaLinear: float, beta: float) -> bool:
    """True iff beta < V/(V+κ); at equality the organisation cooperates."""
    return beta < beta_star(V, kappaLinear)


def default_delta_alpha(params: ModelParams, tp: TrustParams) -> float:
    """Belief downgrade per failed episode: alphaHat − alphaActual at V = B, unless given."""
    if tp.deltaAlpha is not None:
        return tp.deltaAlpha
    return tp.alphaHat - alpha_actual_at(tp, params.B)


def theta_star(
    params: ModelParams,
    tp: TrustParams,
    c: Optional[float] = None,
    rel_step: float = 1e-4,
) -> Tuple[float, bool]:
    """
    Trust–cost threshold and whether cost embedding outpaces belief erosion.

    θ* = (|∂xG*/∂alpha| / ∂xG*/∂c)·(Δα/c0) with finite-difference partials of
    the tipping point; the ratchet helps when delta/lambda > θ*.

    Raises:
        NoRootError: Propagated from the tipping point.
    """
    params = params.resolved()
    c = params.c0 if c is None else c
    ha = rel_step * params.alpha
    hc = rel_step * c
    d_alpha = (tipping_point(params.model_copy(update={"alpha": params.alpha + ha}), c)
               - tipping_point(params.model_copy(update={"alpha": params.alpha - ha}), c)) / (2.0 * ha)
    d_c = (tipping_point(params, c + hc) - tipping_point(params, c - hc)) / (2.0 * hc)
    theta = abs(d_alpha) / d_c * default_delta_alpha(params, tp) / params.c0
    ratio = math.inf if params.lam == 0 else params.delta / params.lam
    beneficial = ratio > theta
    logger.debug(f"theta*={theta:.6f}, delta/lambda={ratio}, ratchet beneficial={beneficial}")
    return theta, beneficial


def trust_report(
    params: ModelParams,
    tp: TrustParams,
    c: Optional[float] = None,
    beta: Optional[float] = None,
) -> TrustReport:
    """
    Assemble the trust-game outcome; θ* is left empty outside the bistable regime.
    """
    beta = tp.beta if beta is None else beta
    delta, actual = optimal_reneging(tp)
    try:
        theta, beneficial = theta_star(params, tp, c)
    except NoRootError:
        logger.info("No tipping point; trust-cost threshold not defined.")
        theta, beneficial = None, None
    return TrustReport(
        alphaHat=tp.alphaHat,
        deltaOpt=delta,
        alphaActual=actual,
        betaStar=beta_star(tp.V, tp.kappaLinear),
        willDefect=will_defect(tp.V, tp.kappaLinear, beta),
        thetaStar=theta,
        ratchetBeneficial=beneficial,
    )
