# tests/test_trust.py

import numpy as np
import pytest
from pydantic import ValidationError
from adoptlab.dynamics import IntegrationConfig
from adoptlab.exceptions import AtBoundaryError, NoRootError
from adoptlab.model import FullState, ModelParams, TrustParams
from adoptlab.trust import (
    TrustReport,
    beta_star,
    default_delta_alpha,
    detect_trust_trap,
    optimal_reneging,
    organisation_payoff,
    reneging_sensitivity,
    theta_star,
    trust_report,
    trust_trajectory,
    will_defect,
)


def test_optimal_reneging_defaults(tp):
    delta, actual = optimal_reneging(tp)
    assert delta == pytest.approx(0.5)
    assert actual == pytest.approx(0.2)
    assert reneging_sensitivity(tp) == pytest.approx(0.25)


@pytest.mark.parametrize("V", [0.0, 10.0])
def test_sensitivity_at_boundary(V):
    with pytest.raises(AtBoundaryError):
        reneging_sensitivity(TrustParams(V=V))


def test_optimal_reneging_clamps_to_announced_share():
    delta, actual = optimal_reneging(TrustParams(V=10.0))
    assert delta == pytest.approx(0.7)
    assert actual == 0.0


@pytest.mark.parametrize("alphaHat,kappa,V", [(0.7, 4.0, 2.0), (0.4, 1.5, 0.3), (0.9, 8.0, 4.5)])
def test_first_order_solution_beats_scan(alphaHat, kappa, V):
    tp = TrustParams(alphaHat=alphaHat, kappaCoeff=kappa, V=V)
    _, actual = optimal_reneging(tp)
    levels = np.linspace(0.0, alphaHat, 2001)
    assert organisation_payoff(tp, actual) >= np.max(organisation_payoff(tp, levels)) - 1e-12


def test_beta_star():
    assert beta_star(1.0, 1.0) == 0.5
    assert beta_star(2.0, 1.0) > beta_star(1.0, 1.0) > beta_star(1.0, 2.0)
    # indifference counts as cooperation
    assert not will_defect(1.0, 1.0, 0.5)
    assert will_defect(1.0, 1.0, 0.4)


def test_default_delta_alpha(ref, tp):
    assert default_delta_alpha(ref, tp) == pytest.approx(0.5)
    assert default_delta_alpha(ref, tp.model_copy(update={"deltaAlpha": 0.1})) == 0.1


def test_theta_star_reference(ref, tp):
    theta, beneficial = theta_star(ref, tp)
    assert theta == pytest.approx(0.857, rel=1e-2)
    assert beneficial


def test_theta_star_without_belief_updating(tp):
    _, beneficial = theta_star(ModelParams(lam=0.0), tp)
    assert beneficial


def test_theta_star_needs_a_tipping_point(tp):
    with pytest.raises(NoRootError):
        theta_star(ModelParams(B=0.5), tp)


def test_trust_report(ref, tp):
    report = trust_report(ref, tp)
    assert report.alphaActual == pytest.approx(0.2)
    assert report.willDefect is False
    assert report.thetaStar == pytest.approx(0.857, rel=1e-2)
    assert trust_report(ref, tp, beta=0.5).willDefect

    monostable = trust_report(ModelParams(B=0.5), tp)
    assert monostable.thetaStar is None
    assert monostable.ratchetBeneficial is None


def test_trust_report_rejects_inconsistent_split():
    with pytest.raises(ValidationError):
        TrustReport(alphaHat=0.7, deltaOpt=0.8, alphaActual=-0.1, betaStar=0.5, willDefect=False)
    with pytest.raises(ValidationError):
        TrustReport(alphaHat=0.7, deltaOpt=0.5, alphaActual=0.3, betaStar=0.5, willDefect=False)


def test_low_belief_is_a_trust_trap(ref, tp, fast):
    start = FullState.initial(0.3, 0.6, 0.1, c=1.0, alphaBelief=0.05)
    assert detect_trust_trap(start, ref, tp, fast)
    assert not detect_trust_trap(start, ref, tp, fast, contractual=True)


@pytest.mark.parametrize("horizon", [150.0, 1500.0])
def test_trust_trap_is_absorbing(ref, tp, horizon):
    start = FullState.initial(0.3, 0.6, 0.1, c=1.0, alphaBelief=0.05)
    config = IntegrationConfig(stepSize=0.05, tMax=horizon, stopAtCorner=False)
    traj = trust_trajectory(start, ref, tp, config)
    assert traj.times[-1] == pytest.approx(horizon)
    assert traj.converged == "P"
    assert traj.events == []
    assert detect_trust_trap(start, ref, tp, config)


def test_announced_belief_is_not_a_trap(ref, tp, fast):
    start = FullState.initial(0.3, 0.6, 0.1, c=1.0, alphaBelief=0.7)
    assert not detect_trust_trap(start, ref, tp, fast)
