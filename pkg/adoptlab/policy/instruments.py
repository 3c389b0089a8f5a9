# adoptlab/policy/instruments.py

import math
from typing import List, Optional, Tuple
import numpy as np
from ..base.control import BaseControl
from ..model.params import ModelParams
from ..model.payoffs import systemic_benefit
from ..model.state import FullState, SimplexState
from ..dynamics.config import DynamicsFlags, IntegrationConfig
from ..dynamics.integrator import integrate, integrate_batch, initial_state
from ..dynamics.trajectory import Trajectory
from ..equilibria.tipping import edge_gap, tipping_point
from ..exceptions import ConfigurationError, NoCrossingError, NoRootError
import logging

logger = logging.getLogger('adoptlab.policy.instruments')


def subsidy(e: float, params: ModelParams, c: Optional[float] = None) -> float:
    """
    Payment to genuine adopters that closes the private payoff gap at adoption level ``e``.

    Falls to zero once the appropriated threshold benefit covers the gap.
    """
    c = params.c0 if c is None else c
    return max(0.0, edge_gap(params, c) - params.alpha * float(systemic_benefit(e, params)))


def seeding_fraction(params: ModelParams, c: Optional[float] = None, margin: float = 0.02) -> float:
    """
    Genuine-adopter share to seed on the G–P edge so the population tips to G.

    Returns 0 when genuine adoption already dominates the edge.

    Raises:
        NoRootError: If no seeding level suffices (side 'below').
    """
    try:
        x = tipping_point(params, c)
    except NoRootError as e:
        if e.side == "above":
            logger.info("Genuine adoption dominates the G-P edge; no seeding needed.")
            return 0.0
        raise
    return min(1.0, x + margin)


def seeded_outcome(params: ModelParams, fraction: float, c: Optional[float] = None,
                   config: Optional[IntegrationConfig] = None) -> str:
    """Corner reached at frozen cost from (fraction, 1 − fraction, 0)."""
    return integrate_batch(np.array([[fraction, 1.0 - fraction, 0.0]]), params, c, config).labels[0]


class ExcursionClamp(BaseControl):
    """
    Holds the frequencies for ``hold`` time units, then releases them.

    Only the simplex is clamped. The cost follows the ratchet throughout, so
    it keeps falling after release for as long as the population stays above
    threshold.
    """

    def __init__(self, hold: float) -> None:
        self.hold = hold

    def breakpoints(self) -> List[float]:
        return [self.hold] if self.hold > 0 else []

    def frozen(self, t: float) -> bool:
        return t < self.hold


def _hold_rate(params: ModelParams, state: SimplexState) -> float:
    e = state.xG + params.gamma * state.xP
    if e <= params.eStar:
        error_msg = f"Excursion state has e={e:.6g} <= e*={params.eStar}; nothing to hold above threshold."
        logger.error(error_msg)
        raise ConfigurationError(error_msg)
    return params.deltaInd + params.delta


def excursion_trajectory(
    params: ModelParams,
    state: SimplexState,
    hold: float,
    config: Optional[IntegrationConfig] = None,
) -> Trajectory:
    """Coupled run that clamps ``state`` for ``hold`` and then evolves freely."""
    params = params.resolved()
    _hold_rate(params, state)
    return integrate(initial_state(params, *state.as_tuple()), params, config, DynamicsFlags(), control=ExcursionClamp(hold))


def critical_excursion(
    params: ModelParams,
    state: SimplexState,
    config: Optional[IntegrationConfig] = None,
    tol: float = 1e-3,
    max_hold: float = 1000.0,
) -> float:
    """
    Shortest hold above threshold after which the coupled dynamics reach G.

    During the hold the cost decays from c0 at rate delta + deltaInd. After
    release frequencies, cost and belief evolve together, so a state released
    slightly below its tipping point can still tip while the cost keeps
    falling. The hold length is bracketed by doubling and then bisected to
    ``tol``. For states on the G–P edge the result never exceeds
    :func:`closed_form_excursion`.

    Args:
        params (ModelParams): Model parameters.
        state (SimplexState): Clamped excursion state (must have e > e*).
        config (Optional[IntegrationConfig]): Integration settings.
        tol (float): Bisection tolerance on the hold length.
        max_hold (float): Longest hold tried before giving up.

    Returns:
        float: T*, 0 if the state already tips without a hold.

    Raises:
        ConfigurationError: If the state is not above threshold.
        NoCrossingError: If no hold up to ``max_hold`` flips the basin.
    """
    params = params.resolved()
    _hold_rate(params, state)

    def reaches_g(hold: float) -> bool:
        return excursion_trajectory(params, state, hold, config).converged == "G"

    if reaches_g(0.0):
        return 0.0
    hi = 1.0
    while not reaches_g(hi):
        hi *= 2.0
        if hi > max_hold:
            error_msg = f"No hold up to {max_hold} flips the basin (delta={params.delta})."
            logger.error(error_msg)
            raise NoCrossingError(error_msg)
    lo = hi / 2.0 if hi > 1.0 else 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if reaches_g(mid):
            hi = mid
        else:
            lo = mid
    logger.info(f"Critical excursion length T*={hi:.4f} from {state.as_tuple()}")
    return hi


def closed_form_excursion(params: ModelParams, state: SimplexState) -> float:
    """
    Hold after which a clamped G–P edge state is released on its tipping point.

    Solves xG = xG*(c0·e^{−rate·T}) for T. A hold this long always tips,
    because the released state starts on the tipping point and the cost
    keeps falling, so this is an upper bound on :func:`critical_excursion`.

    Raises:
        ConfigurationError: If the state is off the G–P edge or below threshold.
        NoCrossingError: If no positive cost puts the state on the tipping point.
    """
    params = params.resolved()
    if state.xR > 1e-12:
        raise ConfigurationError("Closed-form excursion length needs a state on the G-P edge.")
    rate = _hold_rate(params, state)
    e = state.xG + params.gamma * state.xP
    c_star = params.alpha * float(systemic_benefit(e, params)) + params.cP - (params.bP - params.bG)
    if c_star >= params.c0:
        return 0.0
    if c_star <= 0.0:
        raise NoCrossingError(f"No positive cost places xG={state.xG} on the tipping point.")
    return math.log(params.c0 / c_star) / rate
