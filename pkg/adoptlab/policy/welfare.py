# adoptlab/policy/welfare.py

from typing import Optional, Sequence, Tuple, Union
import numpy as np
import pandas as pd
from pydantic import BaseModel
from ..model.params import ModelParams
from ..model.payoffs import apply_rho
from ..model.state import FullState, SimplexState
from ..dynamics.config import IntegrationConfig
from ..dynamics.integrator import integrate_batch
from ..equilibria.bifurcation import rho_critical_closed_form
from ..exceptions import PropertyViolationError
import logging

logger = logging.getLogger('adoptlab.policy.welfare')

VALUE_ADOPTION_COLUMNS = [
    "rho", "eStar", "alpha", "B", "c0", "systemicValue", "xG", "xP", "xR", "converged",
    "effectiveAdoption", "rawAdoptionRate", "deltaW", "totalLoss",
]


class WelfareReport(BaseModel):
    """Welfare lost by staying at partial adoption, with both adoption metrics."""
    deltaW: float
    totalLoss: float
    effectiveAdoption: float
    rawAdoptionRate: float
    premiseHolds: bool


def welfare(params: ModelParams, final_state: Union[FullState, SimplexState]) -> WelfareReport:
    """
    Per-doctor welfare loss alpha·B + bG − bP + cP and its population total.

    A violated premise B > n(c0 − bG) (full genuine adoption being socially
    optimal) is logged as a warning and flagged rather than rejected.
    """
    s = final_state.simplex if isinstance(final_state, FullState) else final_state
    delta_w = params.alpha * params.B + params.bG - params.bP + params.cP
    premise = params.B > params.n * (params.c0 - params.bG)
    if not premise:
        logger.warning(f"Premise B > n(c0 - bG) violated (B={params.B}, n={params.n}, "
                       f"c0={params.c0}, bG={params.bG}); full genuine adoption may not be socially optimal.")
    return WelfareReport(
        deltaW=delta_w,
        totalLoss=params.n * delta_w,
        effectiveAdoption=s.xG + params.gamma * s.xP,
        rawAdoptionRate=s.xG + s.xP,
        premiseHolds=premise,
    )


def value_adoption_curve(
    params: ModelParams,
    rho_grid: Optional[Sequence[float]] = None,
    config: Optional[IntegrationConfig] = None,
    start: Tuple[float, float, float] = (0.01, 0.98, 0.01),
    strict: bool = True,
) -> Tuple[pd.DataFrame, dict]:
    """
    Steady-state adoption and welfare across technology types.

    Each technology type is integrated at its frozen cost c0(rho) from a
    fixed interior start. The checks report whether n·ΔW is non-increasing
    below the critical type and the correlation between per-doctor systemic
    value alpha·B and effective adoption. The correlation must not be
    positive; it is NaN, and unchecked, when either column is constant to
    within 1e-6.

    Returns:
        Tuple[pd.DataFrame, dict]: One row per technology type, and the checks.

    Raises:
        PropertyViolationError: In strict mode, when a check fails. Otherwise
            the failure is logged and recorded in the checks.
    """
    config = config or IntegrationConfig(tMax=2000.0)
    grid = np.round(np.arange(0.0, 0.951, 0.05), 12) if rho_grid is None else np.asarray(rho_grid, dtype=float)
    rows = []
    for r in grid:
        derived = apply_rho(params, rho=float(r), strict=False)
        result = integrate_batch(np.array([start]), derived, derived.c0, config)
        final = result.final[0]
        report = welfare(derived, SimplexState.from_array(final / final.sum()))
        rows.append({
            "rho": float(r),
            "eStar": derived.eStar,
            "alpha": derived.alpha,
            "B": derived.B,
            "c0": derived.c0,
            "systemicValue": derived.alpha * derived.B,
            "xG": float(final[0]),
            "xP": float(final[1]),
            "xR": float(final[2]),
            "converged": result.labels[0],
            "effectiveAdoption": report.effectiveAdoption,
            "rawAdoptionRate": report.rawAdoptionRate,
            "deltaW": report.deltaW,
            "totalLoss": report.totalLoss,
        })
    table = pd.DataFrame(rows, columns=VALUE_ADOPTION_COLUMNS)

    rho_c = rho_critical_closed_form(params)
    below = table[table["rho"] < rho_c]
    monotone = bool(np.all(np.diff(below["totalLoss"].to_numpy()) <= 1e-12))
    if len(table) > 1 and table["effectiveAdoption"].std() > 1e-6 and table["systemicValue"].std() > 1e-6:
        correlation = float(np.corrcoef(table["systemicValue"], table["effectiveAdoption"])[0, 1])
    else:
        correlation = float("nan")
    checks = {"rhoCritical": rho_c, "welfareMonotone": monotone, "valueAdoptionCorrelation": correlation}
    failed = []
    if not monotone:
        failed.append("aggregate welfare loss is not non-increasing below the critical technology type")
    if correlation > 0:
        failed.append(f"systemic value and effective adoption correlate positively ({correlation:.4f})")
    if failed:
        error_msg = f"Value-adoption curve: {'; '.join(failed)}"
        if strict:
            logger.error(error_msg)
            raise PropertyViolationError(error_msg)
        logger.warning(error_msg)
    logger.info(f"Value-adoption curve over {len(table)} technology types: {checks}")
    return table, checks
