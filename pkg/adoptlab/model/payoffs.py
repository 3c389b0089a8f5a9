# adoptlab/model/payoffs.py

"""
Pure payoff, benefit and cost functions of the adoption game.

Scalar entry points take a :class:`SimplexState`; the ``*_arrays`` variants
accept plain floats or numpy arrays of frequencies and are what the
integrators call.
"""

from typing import Optional, Tuple, Union
import numpy as np
from pydantic import ValidationError
from scipy.special import expit
from .params import ModelParams, assumption_violations
from .state import SimplexState
from ..exceptions import AssumptionViolationError, ConfigurationError
import logging

logger = logging.getLogger('adoptlab.model.payoffs')

ArrayLike = Union[float, np.ndarray]


def effective_adoption(s: SimplexState, gamma: float) -> float:
    """
    Threshold-relevant adoption mass xG + gamma·xP.
    """
    return s.xG + gamma * s.xP


def logistic(z: ArrayLike, k: float) -> ArrayLike:
    """Logistic sigmoid with steepness ``k``; exactly 1/2 at z = 0."""
    return expit(k * z)


def systemic_benefit(e: ArrayLike, params: ModelParams) -> ArrayLike:
    """
    Threshold benefit B·σ(e − e*).

    Args:
        e (ArrayLike): Effective adoption in [0, 1].
        params (ModelParams): Model parameters.

    Returns:
        ArrayLike: Value in (0, B), strictly increasing in ``e``.
    """
    return params.B * logistic(e - params.eStar, params.k)


def systemic_benefit_slope(e: ArrayLike, params: ModelParams) -> ArrayLike:
    """Derivative of :func:`systemic_benefit` with respect to ``e``."""
    s = logistic(e - params.eStar, params.k)
    return params.B * params.k * s * (1.0 - s)


def disruption_cost(c_current: float) -> float:
    """
    Current disruption cost of genuine adoption.

    The cost is carried in the state; its decay is integrated by the dynamics.
    """
    return float(c_current)


def payoff_arrays(
    xG: ArrayLike,
    xP: ArrayLike,
    c: ArrayLike,
    alpha: ArrayLike,
    params: ModelParams,
    coordination_enabled: bool = False,
) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    """
    Payoffs (fG, fP, fR) for frequencies given as floats or arrays.

    Coordination terms are added on top of the base payoffs, so with every
    coefficient at zero the result is bit-identical to the uncoordinated one.
    """
    e = xG + params.gamma * xP
    fG = -c + alpha * systemic_benefit(e, params) + params.bG
    fP = (-params.cP + params.bP) + 0.0 * xG
    if coordination_enabled:
        fG = fG + (params.psiG * xG - params.psiDev * xP)
        fP = fP - params.psiP * xG
    fR = 0.0 * xG
    return fG, fP, fR


def payoffs(
    s: SimplexState,
    c: float,
    alpha: float,
    params: ModelParams,
    coordination_enabled: bool = False,
) -> Tuple[float, float, float]:
    """
    Payoffs of genuine, partial and non-adoption at state ``s``.

    Args:
        s (SimplexState): Population state.
        c (float): Current disruption cost.
        alpha (float): Sharing fraction in force (announced or believed).
        params (ModelParams): Model parameters.
        coordination_enabled (bool): Whether the coordination terms apply.

    Returns:
        Tuple[float, float, float]: (fG, fP, fR); fR is always zero.
    """
    fG, fP, fR = payoff_arrays(s.xG, s.xP, c, alpha, params, coordination_enabled)
    return float(fG), float(fP), float(fR)


def payoff_advantage(
    s: SimplexState,
    c: float,
    alpha: float,
    params: ModelParams,
    coordination_enabled: bool = False,
) -> float:
    """fG − fP at state ``s``."""
    fG, fP, _ = payoffs(s, c, alpha, params, coordination_enabled)
    return fG - fP


def mean_fitness(s: SimplexState, fG: float, fP: float, fR: float) -> float:
    """Population-weighted mean payoff."""
    return s.xG * fG + s.xP * fP + s.xR * fR


def apply_rho(params: ModelParams, rho: Optional[float] = None, strict: bool = True) -> ModelParams:
    """
    Derive the technology-type dependent parameters.

    With r = rho: e* = (1−r)e*₀, alpha = r + (1−r)alpha₀, bG = bG⁰ + r(bP − bG⁰),
    c0 scaled by (1−r), coordination coefficients scaled by (1−r) and
    B moved linearly towards ``B1`` when that endpoint is given. The returned
    record has ``rho`` cleared and the baselines recorded.

    Args:
        params (ModelParams): Parameters carrying the baselines.
        rho (Optional[float]): Technology type; overrides ``params.rho``.
        strict (bool): Reject derived parameters that break the ordering.

    Returns:
        ModelParams: Derived parameters.

    Raises:
        ConfigurationError: If no technology type is available or it lies outside [0, 1].
        AssumptionViolationError: In strict mode, naming the broken inequalities.
    """
    r = params.rho if rho is None else rho
    if r is None:
        error_msg = "apply_rho needs a technology type: set params.rho or pass rho."
        logger.error(error_msg)
        raise ConfigurationError(error_msg)
    if not 0.0 <= r <= 1.0:
        error_msg = f"Technology type must lie in [0, 1], got {r}."
        logger.error(error_msg)
        raise ConfigurationError(error_msg)

    keep = 1.0 - r
    e0, a0, g0 = params.eStarBase, params.alphaBase, params.bGBase
    update = {
        "eStar": keep * e0,
        "alpha": r + keep * a0,
        "bG": g0 + r * (params.bP - g0),
        "c0": params.c0 * keep,
        "psiG": params.psiG * keep,
        "psiP": params.psiP * keep,
        "psiDev": params.psiDev * keep,
        "rho": None,
        "eStar0": e0,
        "alpha0": a0,
        "bG0": g0,
    }
    if params.B1 is not None:
        update["B"] = params.B + r * (params.B1 - params.B)

    derived = params.model_copy(update=update)
    broken = assumption_violations(derived)
    if not broken:
        if strict:
            # re-validate field ranges as well
            try:
                return ModelParams.model_validate(derived.model_dump())
            except ValidationError as e:
                error_msg = f"Technology type {r} yields invalid parameters: {e}"
                logger.error(error_msg)
                raise AssumptionViolationError(error_msg, []) from e
        return derived

    if strict:
        error_msg = f"Technology type {r} breaks the parameter ordering: {'; '.join(broken)}"
        logger.error(error_msg)
        raise AssumptionViolationError(error_msg, broken)
    logger.warning(f"Technology type {r} breaks the parameter ordering (kept, non-strict): {'; '.join(broken)}")
    return derived
