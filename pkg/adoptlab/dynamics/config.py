# adoptlab/dynamics/config.py

from pydantic import Field, model_validator
from ..base.config import StrictModel


class IntegrationConfig(StrictModel):
    """
    Fixed-step integration settings.

    Attributes:
        stepSize: RK4 step h.
        tMax: Final time.
        cornerTolerance: Distance and derivative bound for stopping at a corner.
        eventTimeTolerance: Bisection tolerance for threshold-crossing times.
        renormalizeEachStep: Clamp negatives and rescale to the simplex after every step.
        stopAtCorner: Stop early once a corner is reached.
        labelTolerance: Distance to a corner at tMax still counted as converged.
    """
    stepSize: float = Field(0.01, gt=0, description="RK4 step size h.")
    tMax: float = Field(200.0, gt=0, description="Integration horizon.")
    cornerTolerance: float = Field(1e-6, gt=0, description="Corner convergence tolerance.")
    eventTimeTolerance: float = Field(1e-9, gt=0, description="Crossing-time bisection tolerance.")
    renormalizeEachStep: bool = Field(True, description="Project back onto the simplex after each step.")
    stopAtCorner: bool = Field(True, description="Terminate once within cornerTolerance of a corner.")
    labelTolerance: float = Field(1e-3, gt=0, description="Corner distance at tMax still labelled as converged.")

    @model_validator(mode="after")
    def check_step(self) -> "IntegrationConfig":
        if self.stepSize > self.tMax:
            raise ValueError(f"stepSize ({self.stepSize}) must not exceed tMax ({self.tMax})")
        return self


class DynamicsFlags(StrictModel):
    """Which coupled subsystems are switched on."""
    trust: bool = Field(False, description="Belief dynamics after gains are realised.")
    coordination: bool = Field(False, description="Coordination payoff terms.")
    costDynamics: bool = Field(True, description="Cost ratchet; False freezes the cost.")
