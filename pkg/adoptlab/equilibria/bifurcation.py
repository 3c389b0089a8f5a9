# adoptlab/equilibria/bifurcation.py

from typing import Dict, Optional
import numpy as np
import pandas as pd
from pydantic import BaseModel
from ..model.params import ModelParams, assumption_violations
from ..model.payoffs import apply_rho
from .stability import corner_eigenvalues
import logging

logger = logging.getLogger('adoptlab.equilibria.bifurcation')

RHO_SWEEP_COLUMNS = ["rho", "eStar", "alpha", "bG", "c0", "B", "eigPtoG", "eigPtoR", "pStable", "orderingViolations"]


class RhoCritical(BaseModel):
    """Closed-form and sweep-detected loss of partial-adoption stability."""
    closedForm: float
    detected: Optional[float]
    step: float
    agrees: bool


def rho_critical_closed_form(params: ModelParams) -> float:
    """1 − cP / ((bP − bG⁰) + c0) with the baseline genuine benefit."""
    return 1.0 - params.cP / ((params.bP - params.bGBase) + params.c0)


def rho_sweep(params: ModelParams, step: float = 0.005, coordination: bool = False) -> pd.DataFrame:
    """
    P-corner eigenvalues across technology types 0, step, ..., 1.

    The derivation runs non-strict because the stability loss sits beyond the
    point where the derived genuine cost falls below cP.
    """
    grid = np.round(np.arange(0.0, 1.0 + 0.5 * step, step), 12)
    rows = []
    for r in grid:
        derived = apply_rho(params, rho=float(r), strict=False)
        rates = corner_eigenvalues(derived, derived.c0, coordination)["P"]
        rows.append({
            "rho": float(r),
            "eStar": derived.eStar,
            "alpha": derived.alpha,
            "bG": derived.bG,
            "c0": derived.c0,
            "B": derived.B,
            "eigPtoG": rates["G"],
            "eigPtoR": rates["R"],
            "pStable": bool(rates["G"] < 0 and rates["R"] < 0),
            "orderingViolations": "; ".join(assumption_violations(derived)),
        })
    return pd.DataFrame(rows, columns=RHO_SWEEP_COLUMNS)


def rho_critical(params: ModelParams, step: float = 0.005, coordination: bool = False) -> RhoCritical:
    """
    Critical technology type, closed form and sweep-detected.

    The detected value is the smallest swept type at which the P corner is no
    longer stable; it agrees when within one sweep step of the closed form.
    """
    closed = rho_critical_closed_form(params)
    sweep = rho_sweep(params, step, coordination)
    lost = sweep.loc[~sweep["pStable"], "rho"]
    detected = float(lost.iloc[0]) if not lost.empty else None
    agrees = detected is not None and abs(detected - closed) <= step + 1e-12
    if not agrees:
        logger.warning(f"Detected stability loss at {detected} differs from closed form {closed:.6f} by more than {step}")
    logger.info(f"Critical technology type: closed form {closed:.6f}, detected {detected}")
    return RhoCritical(closedForm=closed, detected=detected, step=step, agrees=agrees)


def rho_critical_sensitivities(params: ModelParams, rel_step: float = 1e-4) -> Dict[str, float]:
    """
    Finite-difference derivatives of the closed form in bP, cP and c0.
    """
    out = {}
    for field in ("bP", "cP", "c0"):
        value = getattr(params, field)
        h = rel_step * abs(value)
        up = rho_critical_closed_form(params.model_copy(update={field: value + h}))
        down = rho_critical_closed_form(params.model_copy(update={field: value - h}))
        out[field] = (up - down) / (2.0 * h)
    return out
