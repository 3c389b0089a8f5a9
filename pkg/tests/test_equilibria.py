# tests/test_equilibria.py

import numpy as np
import pytest
from pydantic import ValidationError
from adoptlab.equilibria import (
    EquilibriumReport,
    closed_form_gamma_slope,
    comparative_statics,
    condition_checks,
    corner_eigenvalues,
    corner_stability,
    edge_equilibrium,
    equilibrium_reports,
    gamma_sweep,
    perturbation_check,
    random_assumption_params,
    rho_critical,
    rho_critical_closed_form,
    rho_critical_sensitivities,
    rho_sweep,
    simulated_edge_separatrix,
    tipping_point,
    tipping_residual,
)
from adoptlab.equilibria.bifurcation import RHO_SWEEP_COLUMNS
from adoptlab.exceptions import NoRootError
from adoptlab.model import ModelParams, SimplexState


def test_tipping_point_reference(ref):
    x = tipping_point(ref)
    assert x == pytest.approx(0.53096, abs=1e-4)
    assert abs(tipping_residual(x, ref, ref.c0)) < 1e-10


def test_tipping_point_falls_with_cost(ref):
    assert tipping_point(ref, 0.8) < tipping_point(ref, 1.0)


def test_no_root_sides():
    with pytest.raises(NoRootError) as above:
        tipping_point(ModelParams(eStar=0.1))
    assert above.value.side == "above"
    with pytest.raises(NoRootError) as below:
        tipping_point(ModelParams(B=0.5))
    assert below.value.side == "below"


def test_comparative_statics_signs(ref):
    statics = comparative_statics(ref)
    assert statics.signs["alpha"] == -1
    assert statics.signs["B"] == -1
    assert statics.signs["costGap"] == 1
    assert statics.signs["benefitGap"] == 1
    assert statics.matchesExpected


def test_gamma_slope_matches_closed_form(ref):
    statics = comparative_statics(ref)
    analytic = closed_form_gamma_slope(ref)
    assert analytic < 0
    assert statics.derivatives["gamma"] == pytest.approx(analytic, rel=1e-4)


def test_gamma_sweep_is_monotone(ref):
    table, turning = gamma_sweep(ref)
    assert list(table.columns) == ["gamma", "xGStar", "dxGStar_dgamma"]
    assert turning == []
    finite = table["xGStar"].dropna().to_numpy()
    assert np.all(np.diff(finite) < 0)


def test_corner_eigenvalues_reference(ref):
    rates = corner_eigenvalues(ref, ref.c0)
    assert rates["P"]["G"] == pytest.approx(-1.199, abs=1e-3)
    assert rates["P"]["R"] == pytest.approx(-0.3)
    assert rates["G"]["P"] == pytest.approx(-0.2, abs=1e-3)
    assert rates["G"]["R"] == pytest.approx(-0.5, abs=1e-3)
    assert rates["R"]["G"] == pytest.approx(-0.9, abs=1e-3)
    assert rates["R"]["P"] == pytest.approx(0.3)


def test_corner_stability_reference(ref):
    g, p, r = corner_stability(ref)
    assert (g.stability, p.stability, r.stability) == ("stable", "stable", "saddle")
    assert all(condition_checks(ref, ref.c0).values())


def test_equilibrium_reports_include_edge_saddle(ref):
    reports = equilibrium_reports(ref)
    assert len(reports) == 4
    edge = reports[-1]
    assert edge.kind == "edge_GP_interior"
    assert edge.stability == "saddle"
    assert edge.location.xG == pytest.approx(tipping_point(ref))
    assert edge.row()["kind"] == "edge_GP_interior"


def test_monostable_parameters_report_corners_only():
    reports = equilibrium_reports(ModelParams(B=0.5))
    assert len(reports) == 3
    with pytest.raises(NoRootError):
        edge_equilibrium(ModelParams(B=0.5))


def test_report_rejects_inconsistent_stability():
    with pytest.raises(ValidationError):
        EquilibriumReport(location=SimplexState.corner("G"), kind="corner_G",
                          eigenvalues=(-1.0, 0.5), stability="stable", conditionChecks={})


def test_perturbations_follow_eigenvalues(ref):
    assert all(perturbation_check(ref).values())


def test_random_parameter_sets(ref):
    drawn = random_assumption_params(np.random.default_rng(3), 5)
    assert len(drawn) == 5
    for params in drawn:
        assert params.cP < params.c0 and params.bG < params.bP and params.bP > params.cP
        assert all(perturbation_check(params).values())


def test_simulated_separatrix_matches_root(ref, fast):
    assert simulated_edge_separatrix(ref, config=fast) == pytest.approx(tipping_point(ref), abs=1e-3)


def test_rho_critical_closed_form(tech):
    assert rho_critical_closed_form(tech) == pytest.approx(6.0 / 7.0)


def test_rho_sweep_detects_stability_loss(tech):
    critical = rho_critical(tech, 0.005)
    assert critical.detected == pytest.approx(0.86)
    assert critical.agrees
    table = rho_sweep(tech, 0.05)
    assert list(table.columns) == RHO_SWEEP_COLUMNS
    assert table["pStable"].iloc[0]
    assert not table["pStable"].iloc[-1]


def test_rho_critical_sensitivities(tech):
    sens = rho_critical_sensitivities(tech)
    assert sens["bP"] > 0
    assert sens["cP"] < 0
    assert sens["c0"] > 0
    assert sens["cP"] == pytest.approx(-1.0 / 1.4, rel=1e-6)
