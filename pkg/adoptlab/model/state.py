# adoptlab/model/state.py

from typing import Dict, Tuple
import numpy as np
from pydantic import Field, model_validator
from ..base.config import StrictModel

SIMPLEX_TOLERANCE = 1e-9
CORNERS: Dict[str, Tuple[float, float, float]] = {
    "G": (1.0, 0.0, 0.0),
    "P": (0.0, 1.0, 0.0),
    "R": (0.0, 0.0, 1.0),
}


class SimplexState(StrictModel):
    """
    Population frequencies of genuine (G), partial (P) and non-adopters (R).
    """
    xG: float = Field(..., ge=0)
    xP: float = Field(..., ge=0)
    xR: float = Field(..., ge=0)

    @model_validator(mode="after")
    def check_sum(self) -> "SimplexState":
        total = self.xG + self.xP + self.xR
        if abs(total - 1.0) > SIMPLEX_TOLERANCE:
            raise ValueError(f"frequencies must sum to 1 within {SIMPLEX_TOLERANCE}, got {total!r}")
        return self

    @classmethod
    def corner(cls, name: str) -> "SimplexState":
        xG, xP, xR = CORNERS[name]
        return cls(xG=xG, xP=xP, xR=xR)

    @classmethod
    def from_array(cls, values) -> "SimplexState":
        xG, xP, xR = (float(v) for v in values)
        return cls(xG=xG, xP=xP, xR=xR)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.xG, self.xP, self.xR)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)


class FullState(StrictModel):
    """
    Simplex state extended with the current disruption cost and believed sharing fraction.
    """
    simplex: SimplexState
    c: float = Field(..., ge=0)
    alphaBelief: float = Field(..., ge=0, le=1)
    t: float = Field(0.0, ge=0)

    @classmethod
    def initial(cls, xG: float, xP: float, xR: float, c: float, alphaBelief: float, t: float = 0.0) -> "FullState":
        return cls(simplex=SimplexState(xG=xG, xP=xP, xR=xR), c=c, alphaBelief=alphaBelief, t=t)
