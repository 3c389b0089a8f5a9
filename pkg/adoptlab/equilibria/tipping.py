# adoptlab/equilibria/tipping.py

from typing import Dict, List, Optional, Sequence, Tuple
import numpy as np
import pandas as pd
from pydantic import BaseModel
from scipy.optimize import bisect
from ..model.params import ModelParams
from ..model.payoffs import payoff_arrays, systemic_benefit
from ..exceptions import NoRootError, NumericalError, PropertyViolationError
import logging

logger = logging.getLogger('adoptlab.equilibria.tipping')

RESIDUAL_TOLERANCE = 1e-10
EXPECTED_SIGNS = {"alpha": -1, "B": -1, "costGap": 1, "benefitGap": 1}


def edge_gap(params: ModelParams, c: float) -> float:
    """Private disadvantage of genuine adoption, (c − cP) + (bP − bG)."""
    return (c - params.cP) + (params.bP - params.bG)


def tipping_residual(x: float, params: ModelParams, c: float, coordination: bool = False) -> float:
    """
    fG − fP along the G–P edge at genuine share ``x``.

    Without coordination this is alpha·Φ(gamma + (1−gamma)x) − gap.
    """
    if not coordination:
        e = params.gamma + (1.0 - params.gamma) * x
        return float(params.alpha * systemic_benefit(e, params) - edge_gap(params, c))
    fG, fP, _ = payoff_arrays(x, 1.0 - x, c, params.alpha, params, True)
    return float(fG - fP)


def tipping_point(params: ModelParams, c: Optional[float] = None, coordination: bool = False) -> float:
    """
    Unstable genuine share on the G–P edge where both strategies earn the same.

    Args:
        params (ModelParams): Model parameters.
        c (Optional[float]): Disruption cost (defaults to c0).
        coordination (bool): Include the coordination terms.

    Returns:
        float: xG* in (0, 1) with residual below 1e-10.

    Raises:
        NoRootError: If the residual keeps one sign on [0, 1]; ``side`` is 'above'
            when genuine adoption already dominates the whole edge and 'below'
            when the threshold benefit never closes the gap.
    """
    c = params.c0 if c is None else c
    f0 = tipping_residual(0.0, params, c, coordination)
    f1 = tipping_residual(1.0, params, c, coordination)
    if f0 >= 0.0:
        error_msg = f"No tipping point: fG - fP = {f0:.6g} >= 0 already at xG = 0 (genuine adoption dominates)."
        logger.error(error_msg)
        raise NoRootError(error_msg, side="above")
    if f1 <= 0.0:
        error_msg = f"No tipping point: fG - fP = {f1:.6g} <= 0 even at xG = 1 (gap never closed)."
        logger.error(error_msg)
        raise NoRootError(error_msg, side="below")

    root = bisect(tipping_residual, 0.0, 1.0, args=(params, c, coordination), xtol=1e-15, maxiter=200)
    residual = tipping_residual(root, params, c, coordination)
    if abs(residual) >= RESIDUAL_TOLERANCE:
        error_msg = f"Tipping point bisection stalled with residual {residual:.3g}."
        logger.error(error_msg)
        raise NumericalError(error_msg)
    logger.debug(f"Tipping point xG*={root:.12f} (c={c}, residual={residual:.2e})")
    return float(root)


def _central(fn, value: float, rel_step: float) -> float:
    h = rel_step * max(abs(value), 1e-8)
    return (fn(value + h) - fn(value - h)) / (2.0 * h)


def _forward(fn, value: float, step: float) -> float:
    return (fn(value + step) - fn(value)) / step


class ComparativeStatics(BaseModel):
    """Finite-difference derivatives of the tipping point."""
    derivatives: Dict[str, float]
    signs: Dict[str, int]
    matchesExpected: bool


def comparative_statics(
    params: ModelParams,
    c: Optional[float] = None,
    perturbation: float = 1e-4,
    strict: bool = True,
) -> ComparativeStatics:
    """
    Central finite differences of xG* in alpha, B, the cost gap, the benefit gap and gamma.

    The cost gap c − cP is moved through c and the benefit gap bP − bG through
    bP. Expected signs are (−, −, +, +); the gamma sign is only reported.
    Signs of derivatives with magnitude below 1e-8 are reported as 0 and not checked.

    Raises:
        NoRootError: Propagated from :func:`tipping_point`.
        PropertyViolationError: In strict mode, when a checked sign disagrees.
    """
    c = params.c0 if c is None else c

    def vary(field: str):
        return lambda v: tipping_point(params.model_copy(update={field: v}), c)

    derivatives = {
        "alpha": _central(vary("alpha"), params.alpha, perturbation),
        "B": _central(vary("B"), params.B, perturbation),
        "costGap": _central(lambda v: tipping_point(params, v), c, perturbation),
        "benefitGap": _central(vary("bP"), params.bP, perturbation),
        "gamma": _central(vary("gamma"), params.gamma, perturbation) if params.gamma > 0 else
                 _forward(vary("gamma"), 0.0, perturbation),
    }
    signs = {k: (0 if abs(v) <= 1e-8 else int(np.sign(v))) for k, v in derivatives.items()}
    mismatched = [k for k, s in EXPECTED_SIGNS.items() if signs[k] != 0 and signs[k] != s]
    if mismatched:
        error_msg = f"Tipping point derivatives with unexpected sign: {mismatched} ({derivatives})"
        if strict:
            logger.error(error_msg)
            raise PropertyViolationError(error_msg)
        logger.warning(error_msg)
    logger.info(f"Comparative statics: {signs}")
    return ComparativeStatics(derivatives=derivatives, signs=signs, matchesExpected=not mismatched)


def gamma_sweep(
    params: ModelParams,
    c: Optional[float] = None,
    gammas: Optional[Sequence[float]] = None,
) -> Tuple[pd.DataFrame, List[float]]:
    """
    Tipping point over a grid of partial-adopter weights.

    Points without a root are recorded as NaN. The numerical derivative is a
    central difference on the grid; a sign change between consecutive finite
    derivatives is reported as a turning point.
    The closed-form slope in :func:`closed_form_gamma_slope` is negative
    wherever a root exists, so the turning-point list comes back empty.

    Returns:
        Tuple[pd.DataFrame, List[float]]: Columns gamma, xGStar, dxGStar_dgamma;
        and the gamma values of the turning points.
    """
    c = params.c0 if c is None else c
    grid = np.linspace(0.0, 0.5, 101) if gammas is None else np.asarray(gammas, dtype=float)
    values = []
    for g in grid:
        try:
            values.append(tipping_point(params.model_copy(update={"gamma": float(g)}), c))
        except NoRootError:
            values.append(np.nan)
    values = np.array(values)
    slope = np.gradient(values, grid) if grid.size > 1 else np.full(grid.size, np.nan)
    turning = []
    for i in range(1, grid.size):
        a, b = slope[i - 1], slope[i]
        if np.isfinite(a) and np.isfinite(b) and np.sign(a) * np.sign(b) < 0:
            turning.append(float(0.5 * (grid[i - 1] + grid[i])))
    if turning:
        logger.info(f"Tipping point is non-monotone in gamma; turning points near {turning}")
    else:
        logger.info("Tipping point is monotone in gamma over the sweep.")
    table = pd.DataFrame({"gamma": grid, "xGStar": values, "dxGStar_dgamma": slope})
    return table, turning


def closed_form_gamma_slope(params: ModelParams, c: Optional[float] = None) -> float:
    """
    Analytic dxG*/dgamma = (e_c − 1)/(1 − gamma)², where e_c solves alpha·Φ(e_c) = gap.

    e_c does not depend on gamma and a root inside the edge has e_c < 1, so
    the slope is negative wherever the tipping point exists.
    """
    x = tipping_point(params, c)
    e_c = params.gamma + (1.0 - params.gamma) * x
    return (e_c - 1.0) / (1.0 - params.gamma) ** 2
