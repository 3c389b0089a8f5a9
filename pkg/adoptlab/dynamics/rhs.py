# adoptlab/dynamics/rhs.py

from typing import NamedTuple, Optional, Tuple
import numpy as np
from ..model.params import ModelParams
from ..model.payoffs import payoff_arrays
from ..model.state import FullState, SimplexState
from ..exceptions import ConfigurationError
import logging

logger = logging.getLogger('adoptlab.dynamics.rhs')


class StateDerivative(NamedTuple):
    """Time derivative of a :class:`FullState`."""
    dxG: float
    dxP: float
    dxR: float
    dc: float
    dalpha: float


def replicator_arrays(xG, xP, xR, c, alpha, params: ModelParams, coordination_enabled: bool = False, bonus=0.0):
    """
    Replicator velocities xᵢ(fᵢ − f̄) for float or array frequencies.

    ``bonus`` is added to the genuine-adoption payoff (subsidies).
    """
    fG, fP, fR = payoff_arrays(xG, xP, c, alpha, params, coordination_enabled)
    fG = fG + bonus
    fbar = xG * fG + xP * fP + xR * fR
    return xG * (fG - fbar), xP * (fP - fbar), xR * (fR - fbar)


def replicator_rhs(
    s: SimplexState,
    c: float,
    alpha: float,
    params: ModelParams,
    coordination_enabled: bool = False,
) -> Tuple[float, float, float]:
    """
    Replicator right-hand side at a simplex state.

    A face stays invariant: a zero frequency has exactly zero velocity.

    Returns:
        Tuple[float, float, float]: (dxG, dxP, dxR), summing to zero.
    """
    dxG, dxP, dxR = replicator_arrays(s.xG, s.xP, s.xR, c, alpha, params, coordination_enabled)
    return float(dxG), float(dxP), float(dxR)


def cost_decay_rate(e: float, params: ModelParams) -> float:
    """Relative cost decay rate deltaInd + delta·1{e > e*}."""
    return params.deltaInd + (params.delta if e > params.eStar else 0.0)


def full_rhs(
    state: FullState,
    params: ModelParams,
    trust_enabled: bool = False,
    coord_enabled: bool = False,
    gains_realised: bool = False,
    alpha_actual: Optional[float] = None,
    cost_dynamics: bool = True,
) -> StateDerivative:
    """
    Right-hand side of the coupled frequency, cost and belief system.

    Args:
        state (FullState): Current state; payoffs use its cost and belief.
        params (ModelParams): Model parameters.
        trust_enabled (bool): Whether beliefs are updated.
        coord_enabled (bool): Whether coordination terms apply.
        gains_realised (bool): Whether e has exceeded e* at some earlier time.
        alpha_actual (Optional[float]): Realised sharing the beliefs move towards.
        cost_dynamics (bool): False freezes the cost.

    Returns:
        StateDerivative: Derivatives of frequencies, cost and belief.

    Raises:
        ConfigurationError: If belief dynamics are active without a realised sharing level.
    """
    s = state.simplex
    dxG, dxP, dxR = replicator_rhs(s, state.c, state.alphaBelief, params, coord_enabled)
    e = s.xG + params.gamma * s.xP
    dc = -cost_decay_rate(e, params) * state.c if cost_dynamics else 0.0
    dalpha = 0.0
    if trust_enabled and gains_realised:
        if alpha_actual is None:
            error_msg = "Belief dynamics need alpha_actual once gains are realised."
            logger.error(error_msg)
            raise ConfigurationError(error_msg)
        dalpha = -params.lam * (state.alphaBelief - alpha_actual)
    return StateDerivative(dxG, dxP, dxR, dc, dalpha)


def batch_rhs(X: np.ndarray, c: float, alpha: float, params: ModelParams, coordination_enabled: bool = False) -> np.ndarray:
    """Replicator velocities for an (N, 3) array of states."""
    dxG, dxP, dxR = replicator_arrays(X[:, 0], X[:, 1], X[:, 2], c, alpha, params, coordination_enabled)
    return np.column_stack((dxG, dxP, dxR))
