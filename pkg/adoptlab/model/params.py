# adoptlab/model/params.py

from typing import List, Optional
from pydantic import Field, model_validator
from ..base.config import OrderingViolation, StrictModel
import logging

logger = logging.getLogger('adoptlab.model.params')


def assumption_violations(params: "ModelParams") -> List[str]:
    """
    List every broken ordering or range inequality by name.

    Works on unvalidated copies (``model_copy``) as well, which is how the
    non-strict technology-type sweep inspects its derived parameters.

    Returns:
        List[str]: Human-readable inequalities that fail; empty when valid.
    """
    broken = []
    if not params.cP > 0:
        broken.append(f"0 < cP (cP={params.cP})")
    if not params.cP < params.c0:
        broken.append(f"cP < c0 (cP={params.cP}, c0={params.c0})")
    if not params.bG < params.bP:
        broken.append(f"bG < bP (bG={params.bG}, bP={params.bP})")
    if not params.bP > params.cP:
        broken.append(f"bP > cP (bP={params.bP}, cP={params.cP})")
    if not 0 < params.alpha < 1:
        broken.append(f"0 < alpha < 1 (alpha={params.alpha})")
    if not 0 < params.eStar < 1:
        broken.append(f"0 < eStar < 1 (eStar={params.eStar})")
    return broken


class ModelParams(StrictModel):
    """
    Every scalar parameter of the adoption game.

    Defaults are the reference parameter set, so a config that lists only a
    few keys still describes a bistable population.
    """
    c0: float = Field(1.0, gt=0, description="Initial disruption cost of genuine adoption.")
    cP: float = Field(0.2, ge=0, description="Cost of partial adoption.")
    bG: float = Field(0.1, ge=0, description="Direct private benefit of genuine adoption.")
    bP: float = Field(0.5, gt=0, description="Direct private benefit of partial adoption.")
    B: float = Field(2.0, gt=0, description="Total systemic benefit.")
    alpha: float = Field(0.7, gt=0, lt=1, description="Appropriated fraction of the systemic benefit.")
    gamma: float = Field(0.3, ge=0, lt=1, description="Contribution weight of partial adopters.")
    eStar: float = Field(0.6, gt=0, lt=1, description="Adoption threshold e*.")
    k: float = Field(25.0, gt=0, description="Steepness of the logistic threshold.")
    delta: float = Field(0.5, gt=0, description="Embedding cost-decay rate above threshold.")
    deltaInd: float = Field(0.0, ge=0, description="Individual cost-decay rate below threshold.")
    lam: float = Field(0.1, ge=0, alias="lambda", description="Belief updating rate.")
    psiG: float = Field(0.0, ge=0, description="Coordination gain among genuine adopters.")
    psiP: float = Field(0.0, ge=0, description="Coordination penalty on partial adopters from genuine adopters.")
    psiDev: float = Field(0.0, ge=0, description="Cultural deviance penalty on genuine adopters.")
    rho: Optional[float] = Field(None, ge=0, le=1, description="Technology type index; derived parameters follow when set.")
    eStar0: Optional[float] = Field(None, gt=0, lt=1, description="Baseline threshold for the technology-type derivation.")
    alpha0: Optional[float] = Field(None, gt=0, lt=1, description="Baseline appropriability for the technology-type derivation.")
    bG0: Optional[float] = Field(None, ge=0, description="Baseline genuine benefit for the technology-type derivation.")
    B1: Optional[float] = Field(None, ge=0, description="Systemic benefit at the point-solution endpoint (defaults to B).")
    n: float = Field(1.0, gt=0, description="Population size for aggregate welfare.")

    @model_validator(mode="after")
    def check_ordering(self) -> "ModelParams":
        """
        Enforce 0 < cP < c0, bG < bP and bP > cP.
        """
        broken = assumption_violations(self)
        if broken:
            raise OrderingViolation(broken)
        return self

    @property
    def eStarBase(self) -> float:
        return self.eStar if self.eStar0 is None else self.eStar0

    @property
    def alphaBase(self) -> float:
        return self.alpha if self.alpha0 is None else self.alpha0

    @property
    def bGBase(self) -> float:
        return self.bG if self.bG0 is None else self.bG0

    def resolved(self, strict: bool = True) -> "ModelParams":
        """
        Parameters with the technology-type derivation applied when ``rho`` is set.
        """
        if self.rho is None:
            return self
        from .payoffs import apply_rho
        return apply_rho(self, strict=strict)


class TrustParams(StrictModel):
    """
    Parameters of the organisation's trust game.

    ``kappaCoeff`` is the curvature of the quadratic reputational cost
    ½·kappaCoeff·Δ², which is convex with zero value and slope at the
    origin. ``kappaLinear`` is the separate per-unit cost of its local
    linearisation used by the repeated-game threshold.
    """
    alphaHat: float = Field(0.7, gt=0, le=1, description="Announced sharing fraction.")
    kappaCoeff: float = Field(4.0, gt=0, description="Curvature of the quadratic reputational cost.")
    kappaLinear: float = Field(1.0, gt=0, description="Per-unit reputational cost of the linearisation.")
    beta: float = Field(0.9, gt=0, lt=1, description="Organisation discount factor.")
    V: float = Field(2.0, ge=0, description="Realised systemic gain.")
    deltaAlpha: Optional[float] = Field(None, ge=0, description="Belief erosion per failed attempt; derived when omitted.")
