# adoptlab/base/control.py

from typing import TYPE_CHECKING, List, Optional, Tuple
import logging

if TYPE_CHECKING:
    from ..model.params import ModelParams

# Initialize logger for this module
logger = logging.getLogger('adoptlab.base.control')

Simplex = Tuple[float, float, float]


class BaseControl:
    """
    Base class for piecewise-constant controls applied during integration.

    Every hook is a no-op here. The integrator aligns its steps to
    :meth:`breakpoints`, so window-dependent hooks only ever see times
    inside a single window; hooks are queried with the time at the start of
    the step.
    """

    def breakpoints(self) -> List[float]:
        """Times at which the control changes (window starts and ends)."""
        return []

    def params_at(self, t: float, params: "ModelParams") -> "ModelParams":
        """Effective parameters in force at ``t``."""
        return params

    def fitness_bonus(self, t: float, xG: float, xP: float, c: float, alpha: float, params: "ModelParams") -> float:
        """Additive payment to genuine adopters at ``t``."""
        return 0.0

    def pinned_alpha(self, t: float) -> Optional[float]:
        """Belief value held fixed at ``t``, or None when beliefs evolve freely."""
        return None

    def frozen(self, t: float) -> bool:
        """Whether the population frequencies are held fixed at ``t``."""
        return False

    def jump(self, t: float, simplex: Simplex) -> Simplex:
        """Instantaneous change of the frequencies when a window opens at ``t``."""
        return simplex
