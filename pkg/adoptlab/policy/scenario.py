# adoptlab/policy/scenario.py

from typing import List, Literal, Optional, Tuple
from pydantic import Field, model_validator
from ..base.config import StrictModel
from ..base.control import BaseControl, Simplex
from ..model.params import ModelParams, TrustParams
from ..model.payoffs import payoff_arrays
from ..model.state import FullState
from ..dynamics.config import DynamicsFlags, IntegrationConfig
from ..dynamics.integrator import integrate
from ..dynamics.trajectory import Trajectory
from ..trust.game import TrustReport, optimal_reneging, trust_report
from ..exceptions import SchedulingError
from .welfare import WelfareReport, welfare
import logging

logger = logging.getLogger('adoptlab.policy.scenario')

InterventionKind = Literal["subsidy", "seed", "trustFix", "culturePrep", "embedSupport", "pilot"]
MASS_MOVING = ("seed", "pilot")


class Intervention(StrictModel):
    """
    One policy instrument applied over [startTime, startTime + duration).

    subsidy pays ``magnitude`` (plus the calibrated gap when ``calibrated``)
    to genuine adopters; seed moves ``magnitude`` of population mass to
    genuine adoption at the window start; trustFix pins beliefs at the
    announced share; culturePrep scales psiDev by (1 − magnitude);
    embedSupport scales delta by (1 + magnitude); pilot raises xG to
    ``magnitude`` and holds the frequencies for the window.
    """
    kind: InterventionKind
    startTime: float = Field(0.0, ge=0)
    duration: float = Field(0.0, ge=0)
    magnitude: float = Field(0.0, ge=0)
    calibrated: bool = Field(True, description="Subsidy tops up the payoff gap before adding magnitude.")
    fromROnly: bool = Field(False, description="Seed takes mass from non-adopters only.")

    @model_validator(mode="after")
    def check_magnitude(self) -> "Intervention":
        if self.kind in ("seed", "pilot", "culturePrep") and self.magnitude > 1.0:
            raise ValueError(f"{self.kind} magnitude must lie in [0, 1], got {self.magnitude}")
        return self

    @property
    def endTime(self) -> float:
        return self.startTime + self.duration

    def active(self, t: float) -> bool:
        return self.startTime <= t < self.endTime


class PolicyScenario(StrictModel):
    """A schedule of interventions with the population it acts on."""
    schedule: List[Intervention] = Field(default_factory=list)
    initial: FullState
    params: ModelParams = Field(default_factory=ModelParams)
    tp: TrustParams = Field(default_factory=TrustParams)
    flags: DynamicsFlags = Field(default_factory=lambda: DynamicsFlags(trust=True, coordination=True))


def move_mass(simplex: Simplex, amount: float, from_r_only: bool = False) -> Simplex:
    """
    Shift ``amount`` of mass to genuine adoption, proportionally from P and R.

    The amount is capped by the available mass.
    """
    xG, xP, xR = simplex
    if from_r_only:
        moved = min(amount, xR)
        return xG + moved, xP, xR - moved
    pool = xP + xR
    moved = min(amount, pool)
    if pool <= 0.0 or moved <= 0.0:
        return simplex
    share = moved / pool
    return xG + moved, xP - xP * share, xR - xR * share


def check_schedule(schedule: List[Intervention]) -> None:
    """
    Reject overlapping mass-moving windows.

    Raises:
        SchedulingError: If two seeds or pilots share a time.
    """
    movers = sorted((i for i in schedule if i.kind in MASS_MOVING), key=lambda i: i.startTime)
    for first, second in zip(movers, movers[1:]):
        if second.startTime <= first.endTime:
            error_msg = (f"Overlapping {first.kind} [{first.startTime}, {first.endTime}] and "
                         f"{second.kind} [{second.startTime}, {second.endTime}].")
            logger.error(error_msg)
            raise SchedulingError(error_msg)


class InterventionSchedule(BaseControl):
    """
    Applies a list of interventions as integration hooks.
    """

    def __init__(self, schedule: List[Intervention], alpha_hat: float, coordination: bool = False) -> None:
        check_schedule(schedule)
        self.schedule = list(schedule)
        self.alpha_hat = alpha_hat
        self.coordination = coordination
        logger.debug(f"InterventionSchedule with {len(self.schedule)} interventions.")

    def _active(self, t: float, kind: str) -> List[Intervention]:
        return [i for i in self.schedule if i.kind == kind and i.active(t)]

    def breakpoints(self) -> List[float]:
        points = set()
        for i in self.schedule:
            points.add(i.startTime)
            if i.duration > 0:
                points.add(i.endTime)
        return sorted(points)

    def params_at(self, t: float, params: ModelParams) -> ModelParams:
        update = {}
        culture = self._active(t, "culturePrep")
        if culture:
            scale = 1.0
            for i in culture:
                scale *= 1.0 - i.magnitude
            update["psiDev"] = params.psiDev * scale
        embed = self._active(t, "embedSupport")
        if embed:
            scale = 1.0
            for i in embed:
                scale *= 1.0 + i.magnitude
            update["delta"] = params.delta * scale
        return params.model_copy(update=update) if update else params

    def fitness_bonus(self, t, xG, xP, c, alpha, params) -> float:
        bonus = 0.0
        for i in self._active(t, "subsidy"):
            if i.calibrated:
                fG, fP, _ = payoff_arrays(xG, xP, c, alpha, params, self.coordination)
                bonus += max(0.0, float(fP - fG))
            bonus += i.magnitude
        return bonus

    def pinned_alpha(self, t: float) -> Optional[float]:
        return self.alpha_hat if self._active(t, "trustFix") else None

    def frozen(self, t: float) -> bool:
        return any(i.duration > 0 for i in self._active(t, "pilot"))

    def jump(self, t: float, simplex: Simplex) -> Simplex:
        for i in self.schedule:
            if abs(i.startTime - t) > 1e-9:
                continue
            if i.kind == "seed":
                simplex = move_mass(simplex, i.magnitude, i.fromROnly)
            elif i.kind == "pilot" and simplex[0] < i.magnitude:
                simplex = move_mass(simplex, i.magnitude - simplex[0])
        return simplex


def run_scenario(
    scenario: PolicyScenario,
    config: Optional[IntegrationConfig] = None,
) -> Tuple[Trajectory, WelfareReport, TrustReport]:
    """
    Integrate the full system under a policy schedule.

    Args:
        scenario (PolicyScenario): Schedule, initial state and parameters.
        config (Optional[IntegrationConfig]): Integration settings.

    Returns:
        Tuple[Trajectory, WelfareReport, TrustReport]: The run, the welfare at
        its final state and the trust-game outcome.

    Raises:
        SchedulingError: For overlapping seeds or pilots.
    """
    params = scenario.params.resolved()
    control = InterventionSchedule(scenario.schedule, scenario.tp.alphaHat, scenario.flags.coordination)
    alpha_actual = optimal_reneging(scenario.tp)[1]
    traj = integrate(scenario.initial, params, config, scenario.flags, alpha_actual, control)
    report = welfare(params, traj.finalState)
    trust = trust_report(params, scenario.tp)
    logger.info(f"Scenario with {len(scenario.schedule)} interventions: {traj.classification}, "
                f"converged to {traj.converged}")
    return traj, report, trust
