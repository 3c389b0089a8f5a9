# tests/test_policy.py

import numpy as np
import pytest
from pydantic import ValidationError
from adoptlab.dynamics import DynamicsFlags, IntegrationConfig, initial_state
from adoptlab.equilibria import tipping_point
from adoptlab.exceptions import ConfigurationError, NoRootError, PropertyViolationError, SchedulingError
from adoptlab.model import FullState, ModelParams, SimplexState
from adoptlab.trust import theta_star
from adoptlab.policy import (
    CANONICAL_ORDER,
    VALUE_ADOPTION_COLUMNS,
    ExcursionClamp,
    Intervention,
    InterventionSchedule,
    PolicyScenario,
    check_schedule,
    closed_form_excursion,
    critical_excursion,
    excursion_trajectory,
    move_mass,
    pilot_schedule,
    ratchet_pilots,
    repeated_pilots,
    run_scenario,
    seeded_outcome,
    seeding_fraction,
    sequencing_experiment,
    subsidy,
    value_adoption_curve,
    welfare,
)

EXCURSION_STATE = SimplexState(xG=0.44, xP=0.56, xR=0.0)


def test_intervention_validation():
    assert Intervention(kind="seed", startTime=1.0, duration=2.0).endTime == 3.0
    with pytest.raises(ValidationError):
        Intervention(kind="seed", magnitude=1.5)
    with pytest.raises(ValidationError):
        Intervention(kind="bribe")
    with pytest.raises(ValidationError):
        Intervention(kind="subsidy", duration=-1.0)


def test_overlapping_mass_moves_are_rejected():
    check_schedule(pilot_schedule(3, 0.5, 1.0, 2.0))
    overlapping = [
        Intervention(kind="seed", startTime=1.0, magnitude=0.2),
        Intervention(kind="pilot", startTime=0.5, duration=1.0, magnitude=0.5),
    ]
    with pytest.raises(SchedulingError):
        check_schedule(overlapping)
    with pytest.raises(SchedulingError):
        InterventionSchedule(overlapping, alpha_hat=0.7)


def test_move_mass():
    assert move_mass((0.1, 0.6, 0.3), 0.3) == pytest.approx((0.4, 0.4, 0.2))
    assert move_mass((0.1, 0.6, 0.3), 0.5, from_r_only=True) == pytest.approx((0.4, 0.6, 0.0))
    assert move_mass((0.1, 0.6, 0.3), 2.0) == pytest.approx((1.0, 0.0, 0.0))
    assert move_mass((1.0, 0.0, 0.0), 0.2) == (1.0, 0.0, 0.0)


def test_subsidy_closes_the_gap(ref):
    assert subsidy(0.0, ref) == pytest.approx(1.2, rel=1e-5)
    assert subsidy(1.0, ref) == 0.0
    assert subsidy(0.3, ref, c=0.5) < subsidy(0.3, ref)


def test_seeding(ref):
    fraction = seeding_fraction(ref)
    assert fraction == pytest.approx(tipping_point(ref) + 0.02)
    config = IntegrationConfig(stepSize=0.02, tMax=150.0)
    assert seeded_outcome(ref, fraction, config=config) == "G"
    assert seeded_outcome(ref, fraction - 0.04, config=config) == "P"
    assert seeding_fraction(ModelParams(eStar=0.1)) == 0.0
    with pytest.raises(NoRootError):
        seeding_fraction(ModelParams(B=0.5))


def test_closed_form_excursion(ref):
    assert closed_form_excursion(ref, SimplexState(xG=0.48, xP=0.52, xR=0.0)) == pytest.approx(0.458, abs=1e-3)
    assert closed_form_excursion(ref, EXCURSION_STATE) == pytest.approx(1.125, abs=1e-3)


def test_critical_excursion_is_bounded_by_closed_form(ref):
    t_star = critical_excursion(ref, EXCURSION_STATE)
    assert 0.0 < t_star < closed_form_excursion(ref, EXCURSION_STATE)
    assert excursion_trajectory(ref, EXCURSION_STATE, 0.0).converged == "P"


def test_excursion_types(ref):
    t_star = critical_excursion(ref, EXCURSION_STATE)
    failed = excursion_trajectory(ref, EXCURSION_STATE, 0.9 * t_star)
    assert failed.classification == "Type2"
    assert len(failed.excursions) == 1
    assert failed.excursions[0][1] > 0.9 * t_star
    locked = excursion_trajectory(ref, EXCURSION_STATE, 1.1 * t_star)
    assert locked.classification == "Type3"
    # the ratchet keeps running after release
    assert locked.excursions == [(0.0, locked.times[-1])]
    assert locked.finalState.c < 0.01
    assert np.all(np.diff(locked.costs) <= 0.0)


def test_closed_form_excursion_edge_cases(ref):
    assert closed_form_excursion(ref, SimplexState(xG=0.9, xP=0.1, xR=0.0)) == 0.0
    with pytest.raises(ConfigurationError):
        closed_form_excursion(ref, SimplexState(xG=0.5, xP=0.4, xR=0.1))
    with pytest.raises(ConfigurationError):
        closed_form_excursion(ref, SimplexState(xG=0.3, xP=0.7, xR=0.0))


def test_excursion_clamp_hooks():
    clamp = ExcursionClamp(2.0)
    assert clamp.breakpoints() == [2.0]
    assert clamp.frozen(1.0)
    assert not clamp.frozen(2.0)
    assert ExcursionClamp(0.0).breakpoints() == []


def test_schedule_hooks(ref):
    schedule = InterventionSchedule([
        Intervention(kind="culturePrep", startTime=0.0, duration=10.0, magnitude=0.5),
        Intervention(kind="embedSupport", startTime=5.0, duration=5.0, magnitude=1.0),
        Intervention(kind="trustFix", startTime=0.0, duration=3.0),
        Intervention(kind="subsidy", startTime=0.0, duration=1.0, magnitude=0.05, calibrated=False),
    ], alpha_hat=0.7)
    assert schedule.breakpoints() == [0.0, 1.0, 3.0, 5.0, 10.0]
    params = ref.model_copy(update={"psiDev": 0.4})
    assert schedule.params_at(1.0, params).psiDev == pytest.approx(0.2)
    assert schedule.params_at(1.0, params).delta == params.delta
    assert schedule.params_at(6.0, params).delta == pytest.approx(2.0 * params.delta)
    assert schedule.params_at(10.0, params) is params
    assert schedule.pinned_alpha(2.0) == 0.7
    assert schedule.pinned_alpha(3.0) is None
    assert schedule.fitness_bonus(0.5, 0.1, 0.8, 1.0, 0.7, ref) == 0.05
    assert schedule.fitness_bonus(1.5, 0.1, 0.8, 1.0, 0.7, ref) == 0.0


def test_calibrated_subsidy_tops_up_the_gap(ref):
    schedule = InterventionSchedule([Intervention(kind="subsidy", duration=1.0, magnitude=0.05)], alpha_hat=0.7)
    # fP - fG is about 1.2 at the P corner
    bonus = schedule.fitness_bonus(0.0, 0.0, 1.0, 1.0, 0.7, ref)
    assert bonus == pytest.approx(1.2 + 0.05, abs=1e-3)


def test_seed_jump_is_applied_at_window_start(ref, tp):
    scenario = PolicyScenario(
        schedule=[Intervention(kind="seed", startTime=0.0, magnitude=0.4)],
        initial=FullState.initial(0.25, 0.5, 0.25, c=1.0, alphaBelief=0.7),
        params=ref, tp=tp, flags=DynamicsFlags(),
    )
    traj, _, _ = run_scenario(scenario, IntegrationConfig(stepSize=0.05, tMax=1.0))
    assert traj.states[0, 0] == pytest.approx(0.65)
    assert traj.states[0].sum() == pytest.approx(1.0)


def test_subsidy_scenario_reaches_genuine_adoption(ref, tp, fast):
    scenario = PolicyScenario(
        schedule=[Intervention(kind="subsidy", duration=80.0, magnitude=0.05)],
        initial=FullState.initial(0.1, 0.8, 0.1, c=1.0, alphaBelief=0.7),
        params=ref, tp=tp, flags=DynamicsFlags(trust=False),
    )
    traj, report, trust = run_scenario(scenario, fast)
    assert traj.converged == "G"
    assert report.rawAdoptionRate == pytest.approx(1.0, abs=1e-3)
    assert trust.alphaActual == pytest.approx(0.2)


def test_welfare(ref):
    report = welfare(ref, SimplexState(xG=0.0, xP=1.0, xR=0.0))
    assert report.deltaW == pytest.approx(1.2)
    assert report.totalLoss == pytest.approx(1.2)
    assert report.effectiveAdoption == pytest.approx(ref.gamma)
    assert report.rawAdoptionRate == 1.0
    assert report.premiseHolds

    crowded = welfare(ref.model_copy(update={"n": 5.0}), SimplexState(xG=0.0, xP=1.0, xR=0.0))
    assert crowded.totalLoss == pytest.approx(6.0)
    assert not crowded.premiseHolds


def test_value_adoption_curve(tech):
    table, checks = value_adoption_curve(tech, [0.0, 0.25, 0.5], IntegrationConfig(stepSize=0.05, tMax=300.0))
    assert list(table.columns) == VALUE_ADOPTION_COLUMNS
    assert list(table["converged"]) == ["P", "P", "P"]
    assert np.all(np.diff(table["deltaW"]) < 0)
    assert np.all(table["rawAdoptionRate"] > 0.99)
    assert checks["welfareMonotone"]
    assert checks["rhoCritical"] == pytest.approx(6.0 / 7.0)


def test_value_adoption_curve_rejects_rising_welfare_loss(tech):
    config = IntegrationConfig(stepSize=0.05, tMax=300.0)
    with pytest.raises(PropertyViolationError):
        value_adoption_curve(tech, [0.5, 0.0], config)
    table, checks = value_adoption_curve(tech, [0.5, 0.0], config, strict=False)
    assert not checks["welfareMonotone"]
    assert table["totalLoss"].iloc[1] > table["totalLoss"].iloc[0]


def test_ratchet_pilots_lower_cost_each_time(ref):
    report = ratchet_pilots(ref, initial_state(ref, 0.01, 0.98, 0.01))
    assert len(report.table) == 3
    assert report.costs_decreasing
    assert report.tipping_non_increasing
    assert report.trajectory.classification == "Type4"


def test_repeated_pilots_depend_on_decay_to_learning(ref, tp):
    theta, _ = theta_star(ref, tp)
    helped = repeated_pilots(ref.model_copy(update={"lam": ref.delta / (2.0 * theta)}), tp)
    hurt = repeated_pilots(ref.model_copy(update={"lam": 2.0 * ref.delta / theta}), tp)
    assert helped.ratchetBeneficial and helped.improved
    assert not hurt.ratchetBeneficial and not hurt.improved
    assert helped.costAfter < ref.c0
    assert hurt.beliefAfter < tp.alphaHat


def test_sequencing_matters(tp):
    coordinated = ModelParams(psiG=0.2, psiP=0.1, psiDev=0.5)
    start = FullState.initial(0.05, 0.85, 0.10, c=1.0, alphaBelief=0.05)
    table = sequencing_experiment(coordinated, tp, start)
    outcome = dict(zip(table["order"], table["converged"]))
    assert outcome[">".join(CANONICAL_ORDER)] == "G"
    assert outcome["seed>trustFix>culturePrep>embedSupport"] == "P"
