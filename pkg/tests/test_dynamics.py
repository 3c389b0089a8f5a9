# tests/test_dynamics.py

import numpy as np
import pytest
from adoptlab.dynamics import (
    TRAJECTORY_COLUMNS,
    DynamicsFlags,
    IntegrationConfig,
    full_rhs,
    initial_state,
    integrate,
    integrate_batch,
    nearest_corner,
    replicator_rhs,
)
from adoptlab.exceptions import ConfigurationError, NonFiniteStateError
from adoptlab.model import FullState, ModelParams, SimplexState


def test_replicator_velocities_sum_to_zero(ref):
    d = replicator_rhs(SimplexState(xG=0.2, xP=0.5, xR=0.3), ref.c0, ref.alpha, ref)
    assert sum(d) == pytest.approx(0.0, abs=1e-15)


def test_faces_are_invariant(ref):
    d = replicator_rhs(SimplexState(xG=0.4, xP=0.6, xR=0.0), ref.c0, ref.alpha, ref)
    assert d[2] == 0.0
    for corner in ("G", "P", "R"):
        assert replicator_rhs(SimplexState.corner(corner), ref.c0, ref.alpha, ref) == (0.0, 0.0, 0.0)


def test_cost_ratchet_switches_at_threshold(ref):
    below = full_rhs(initial_state(ref, 0.1, 0.8, 0.1), ref)
    above = full_rhs(initial_state(ref, 0.9, 0.1, 0.0), ref)
    assert below.dc == 0.0
    assert above.dc == pytest.approx(-ref.delta * ref.c0)
    frozen = full_rhs(initial_state(ref, 0.9, 0.1, 0.0), ref, cost_dynamics=False)
    assert frozen.dc == 0.0


def test_belief_moves_only_after_gains(ref):
    state = initial_state(ref, 0.9, 0.1, 0.0)
    assert full_rhs(state, ref, trust_enabled=True, alpha_actual=0.2).dalpha == 0.0
    realised = full_rhs(state, ref, trust_enabled=True, gains_realised=True, alpha_actual=0.2)
    assert realised.dalpha == pytest.approx(-ref.lam * (ref.alpha - 0.2))
    with pytest.raises(ConfigurationError):
        full_rhs(state, ref, trust_enabled=True, gains_realised=True)


def test_nearest_corner():
    assert nearest_corner((0.98, 0.01, 0.01))[0] == "G"
    name, dist = nearest_corner((0.0, 1.0, 0.0))
    assert name == "P" and dist == 0.0


def test_integrate_below_threshold_reaches_partial(ref, fast):
    traj = integrate(initial_state(ref, 0.1, 0.8, 0.1), ref, fast)
    assert traj.converged == "P"
    assert traj.classification == "Type1"
    assert traj.events == []
    assert np.all(np.diff(traj.costs) <= 0.0)
    assert np.max(np.abs(traj.states.sum(axis=1) - 1.0)) < 1e-12


def test_integrate_above_tipping_point_reaches_genuine(ref, fast):
    traj = integrate(initial_state(ref, 0.9, 0.1, 0.0), ref, fast)
    assert traj.converged == "G"
    assert traj.classification == "Type3"
    assert traj.excursions[0][0] == 0.0
    assert traj.costs[-1] < ref.c0
    assert np.all(np.diff(traj.costs) <= 0.0)


def test_threshold_crossing_is_located(ref, fast):
    flags = DynamicsFlags(costDynamics=False)
    traj = integrate(initial_state(ref, 0.52, 0.48, 0.0), ref, fast, flags)
    assert traj.converged == "P"
    assert len(traj.events) == 1
    t_cross, kind = traj.events[0]
    assert kind == "cross_down"
    assert traj.excursions == [(0.0, t_cross)]
    i = np.searchsorted(traj.times, t_cross)
    assert traj.effective[i - 1] > ref.eStar >= traj.effective[i]
    # frozen cost: an excursion without cost reduction is not a trajectory type
    assert traj.classification == "Unclassified"


def test_samples_are_step_aligned(ref):
    config = IntegrationConfig(stepSize=0.1, tMax=1.0, stopAtCorner=False)
    traj = integrate(initial_state(ref, 0.1, 0.8, 0.1), ref, config)
    np.testing.assert_allclose(traj.times, np.arange(11) * 0.1, atol=1e-12)
    assert traj.steps == 10
    assert traj.finalState.t == pytest.approx(1.0)
    assert len(traj.samples) == 11


def test_belief_decays_once_gains_are_realised(ref, fast):
    flags = DynamicsFlags(trust=True)
    high = integrate(initial_state(ref, 0.9, 0.1, 0.0), ref, fast, flags, alpha_actual=0.2)
    assert high.beliefs[-1] < ref.alpha
    assert np.all(np.diff(high.beliefs) <= 0.0)
    low = integrate(initial_state(ref, 0.1, 0.8, 0.1), ref, fast, flags, alpha_actual=0.2)
    assert np.all(low.beliefs == ref.alpha)


def test_integrate_rejects_bad_setups(ref):
    with pytest.raises(ConfigurationError):
        integrate(initial_state(ref, 0.1, 0.8, 0.1), ref, flags=DynamicsFlags(trust=True))
    with pytest.raises(ConfigurationError):
        integrate(FullState.initial(0.1, 0.8, 0.1, c=2.0, alphaBelief=0.7), ref)


def test_step_larger_than_horizon_is_rejected():
    with pytest.raises(ValueError):
        IntegrationConfig(stepSize=5.0, tMax=1.0)


def test_trajectory_frame(ref, fast):
    frame = integrate(initial_state(ref, 0.9, 0.1, 0.0), ref, fast).to_frame()
    assert list(frame.columns) == TRAJECTORY_COLUMNS
    assert set(frame["phase"]) <= {"in", "out"}
    assert frame["phase"].iloc[0] == "in"


def test_batch_labels_edge_starts(ref, fast):
    result = integrate_batch(np.array([[0.9, 0.1, 0.0], [0.1, 0.9, 0.0], [0.0, 0.0, 1.0]]), ref, config=fast)
    assert list(result.labels) == ["G", "P", "R"]
    assert result.times[2] == 0.0
    assert np.all(np.isfinite(result.times))


def test_batch_results_do_not_depend_on_batching(ref, fast):
    states = np.array([[0.6, 0.3, 0.1], [0.2, 0.5, 0.3], [0.45, 0.55, 0.0]])
    together = integrate_batch(states, ref, config=fast)
    for i in range(3):
        alone = integrate_batch(states[i:i + 1], ref, config=fast)
        assert alone.labels[0] == together.labels[i]
        np.testing.assert_allclose(alone.final[0], together.final[i], rtol=0.0, atol=1e-14)


def test_batch_non_finite_state_is_reported():
    params = ModelParams(c0=1e300)
    with pytest.raises(NonFiniteStateError) as info:
        integrate_batch(np.array([[0.3, 0.3, 0.4]]), params, config=IntegrationConfig(stepSize=1.0, tMax=10.0))
    assert info.value.step == 1


def test_non_finite_state_is_reported():
    params = ModelParams(c0=1e300)
    with pytest.raises(NonFiniteStateError) as info:
        integrate(initial_state(params, 0.3, 0.3, 0.4), params, IntegrationConfig(stepSize=1.0, tMax=10.0))
    assert info.value.step == 1
    assert info.value.t == pytest.approx(1.0)


@pytest.mark.parametrize("start, flags", [
    ((0.52, 0.48, 0.0), DynamicsFlags(costDynamics=False)),
    ((0.44, 0.56, 0.0), DynamicsFlags()),
])
def test_halving_the_step_across_a_threshold_crossing(ref, start, flags):
    runs = []
    for h in (0.01, 0.005):
        config = IntegrationConfig(stepSize=h, tMax=20.0, stopAtCorner=False)
        runs.append(integrate(initial_state(ref, *start), ref, config, flags))
    coarse, fine = runs
    assert len(coarse.events) == len(fine.events) == 1
    assert coarse.events[0][1] == fine.events[0][1] == "cross_down"
    assert coarse.events[0][0] == pytest.approx(fine.events[0][0], abs=1e-5)
    np.testing.assert_allclose(coarse.states[-1], fine.states[-1], rtol=0.0, atol=1e-6)
    assert coarse.costs[-1] == pytest.approx(fine.costs[-1], abs=1e-6)
