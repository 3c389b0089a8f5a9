# adoptlab/trust/trap.py

from typing import Optional
from ..model.params import ModelParams, TrustParams
from ..model.state import FullState
from ..dynamics.config import DynamicsFlags, IntegrationConfig
from ..dynamics.integrator import integrate
from ..dynamics.trajectory import Trajectory
from ..equilibria.stability import corner_eigenvalues
from .game import optimal_reneging
import logging

logger = logging.getLogger('adoptlab.trust.trap')


def _g_attracts(params: ModelParams, c: float, alpha: float) -> bool:
    return all(v < 0 for v in corner_eigenvalues(params, c, alpha=alpha)["G"].values())


def trust_trajectory(
    initial: FullState,
    params: ModelParams,
    tp: TrustParams,
    config: Optional[IntegrationConfig] = None,
    coordination: bool = False,
) -> Trajectory:
    """Coupled run with belief dynamics toward the realised sharing level."""
    flags = DynamicsFlags(trust=True, coordination=coordination)
    return integrate(initial, params, config, flags, alpha_actual=optimal_reneging(tp)[1])


def detect_trust_trap(
    initial: FullState,
    params: ModelParams,
    tp: TrustParams,
    config: Optional[IntegrationConfig] = None,
    contractual: bool = False,
) -> bool:
    """
    Whether low beliefs lock the population into partial adoption.

    True iff the trust-enabled run converges to the P corner without ever
    exceeding the threshold, the belief never moves from its initial value,
    that value is below the announced share, and the G corner attracts at the
    announced share but not at the believed one.

    Args:
        initial (FullState): Starting state with the believed sharing fraction.
        params (ModelParams): Model parameters.
        tp (TrustParams): Trust-game parameters.
        config (Optional[IntegrationConfig]): Integration settings.
        contractual (bool): Sharing is contractually fixed at alphaHat; there is no trust game.

    Returns:
        bool: Whether the state is a trust trap.
    """
    params = params.resolved()
    if contractual:
        initial = initial.model_copy(update={"alphaBelief": tp.alphaHat})
    belief = initial.alphaBelief
    traj = trust_trajectory(initial, params, tp, config)
    below_throughout = not traj.events and not traj.excursions
    unchanged = float(traj.beliefs[-1]) == belief
    closes_off = (not _g_attracts(params, initial.c, belief)) and _g_attracts(params, initial.c, tp.alphaHat)
    trapped = traj.converged == "P" and below_throughout and unchanged and belief < tp.alphaHat and closes_off
    logger.info(f"Trust trap check from belief {belief}: converged={traj.converged}, "
                f"events={len(traj.events)}, trapped={trapped}")
    return trapped
