# adoptlab/policy/__init__.py

from .welfare import VALUE_ADOPTION_COLUMNS, WelfareReport, value_adoption_curve, welfare
from .scenario import (
    Intervention,
    InterventionSchedule,
    PolicyScenario,
    check_schedule,
    move_mass,
    run_scenario,
)
from .instruments import (
    ExcursionClamp,
    closed_form_excursion,
    critical_excursion,
    excursion_trajectory,
    seeded_outcome,
    seeding_fraction,
    subsidy,
)
from .pilots import (
    CANONICAL_ORDER,
    RatchetReport,
    RepeatedPilotReport,
    pilot_schedule,
    ratchet_pilots,
    repeated_pilots,
    sequencing_experiment,
    sequencing_scenario,
)

__all__ = [
    "VALUE_ADOPTION_COLUMNS",
    "WelfareReport",
    "value_adoption_curve",
    "welfare",
    "Intervention",
    "InterventionSchedule",
    "PolicyScenario",
    "check_schedule",
    "move_mass",
    "run_scenario",
    "ExcursionClamp",
    "closed_form_excursion",
    "critical_excursion",
    "excursion_trajectory",
    "seeded_outcome",
    "seeding_fraction",
    "subsidy",
    "CANONICAL_ORDER",
    "RatchetReport",
    "RepeatedPilotReport",
    "pilot_schedule",
    "ratchet_pilots",
    "repeated_pilots",
    "sequencing_experiment",
    "sequencing_scenario",
]
