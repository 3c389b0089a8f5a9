# adoptlab/cli/commands.py

"""
Subcommands of the ``adoptlab`` tool.

Each command maps a validated RunConfig onto library calls and returns its
output tables; file writing is left to the processor.
"""

from typing import Dict, List
import numpy as np
import pandas as pd
from ..base.command import BaseCommand
from ..model.state import FullState
from ..dynamics.integrator import initial_state, integrate
from ..equilibria.stability import equilibrium_reports
from ..equilibria.tipping import EXPECTED_SIGNS, comparative_statics, gamma_sweep
from ..equilibria.bifurcation import rho_critical, rho_sweep
from ..basins.mapper import basin_measure_sweep, map_basins
from ..trust.game import (
    beta_star,
    default_delta_alpha,
    optimal_reneging,
    reneging_sensitivity,
    theta_star,
    will_defect,
)
from ..policy.scenario import PolicyScenario, run_scenario
from ..policy.welfare import value_adoption_curve
from ..exceptions import AtBoundaryError, NoRootError
import logging

# Initialize logger for this module
logger = logging.getLogger('adoptlab.cli.commands')

DEFAULT_SEED = (0.1, 0.8, 0.1)


def _seed(command: BaseCommand) -> FullState:
    config = command.config
    if config.seedState is not None:
        return config.seedState
    return initial_state(config.params.resolved(), *DEFAULT_SEED)


class SimulateCommand(BaseCommand):
    """Single coupled trajectory from ``seedState``."""
    name = "simulate"
    description = "Integrate one trajectory and write it as a table."

    def run(self) -> Dict[str, pd.DataFrame]:
        config = self.config
        alpha_actual = optimal_reneging(config.tp)[1] if config.flags.trust else None
        traj = integrate(_seed(self), config.params, config.integration, config.flags, alpha_actual)
        logger.info(f"simulate: {traj.steps} steps, converged to {traj.converged} ({traj.classification})")
        return {"trajectory": traj.to_frame()}


class BasinsCommand(BaseCommand):
    """Frozen-cost basin map, optionally followed by a parameter sweep."""
    name = "basins"
    description = "Label a simplex lattice by attractor and trace the separatrix."

    def run(self) -> Dict[str, pd.DataFrame]:
        config = self.config
        coordination = config.flags.coordination
        bmap = map_basins(config.params, config.cost, None, config.integration, config.basin, coordination)
        tables = {
            "basins": bmap.to_frame(),
            "basin_summary": pd.DataFrame([bmap.summary()]),
            "separatrix": bmap.separatrix_frame(),
        }
        if config.sweepSpec is not None:
            spec = config.sweepSpec
            sweep = basin_measure_sweep(config.params, spec.variable, spec.grid(), config.cost,
                                        config.integration, config.basin, coordination, strict=False)
            tables["basin_sweep"] = sweep.table
        return tables


class EquilibriaCommand(BaseCommand):
    """Rest points, tipping-point derivatives and the gamma sweep."""
    name = "equilibria"
    description = "Report equilibria with their stability and the comparative statics."

    def run(self) -> Dict[str, pd.DataFrame]:
        config = self.config
        params = config.params.resolved()
        coordination = config.flags.coordination
        reports = equilibrium_reports(params, config.cost, coordination)
        tables = {"equilibria": pd.DataFrame([r.row() for r in reports])}

        try:
            statics = comparative_statics(params, config.cost, strict=False)
            rows = [{
                "quantity": name,
                "derivative": value,
                "sign": statics.signs[name],
                "expectedSign": EXPECTED_SIGNS.get(name, 0),
            } for name, value in statics.derivatives.items()]
        except NoRootError:
            logger.info("No tipping point; comparative statics table left empty.")
            rows = []
        tables["comparative_statics"] = pd.DataFrame(rows, columns=["quantity", "derivative", "sign", "expectedSign"])

        spec = config.sweepSpec
        gammas = spec.grid() if spec is not None and spec.variable == "gamma" else None
        table, turning = gamma_sweep(params, config.cost, gammas)
        tables["gamma_sweep"] = table
        return tables

    def report(self, tables: Dict[str, pd.DataFrame]) -> List[str]:
        return [f"{row.kind}: {row.stability}" for row in tables["equilibria"].itertuples()]


class SweepRhoCommand(BaseCommand):
    """Technology-type sweep: P-corner stability and the value-adoption curve."""
    name = "sweep-rho"
    description = "Sweep the technology type and locate the critical type."

    def run(self) -> Dict[str, pd.DataFrame]:
        config = self.config
        spec = config.sweepSpec
        step = 0.005
        grid = None
        if spec is not None and spec.variable == "rho":
            if spec.step is not None:
                step = spec.step
            else:
                grid = spec.grid()
        critical = rho_critical(config.params, step, config.flags.coordination)
        curve, checks = value_adoption_curve(config.params, grid, config.integration, strict=False)
        summary = critical.model_dump()
        summary.update(checks)
        return {
            "rho_sweep": rho_sweep(config.params, step, config.flags.coordination),
            "rho_critical": pd.DataFrame([summary]),
            "value_adoption": curve,
        }


class TrustCommand(BaseCommand):
    """Trust-game outcome and the trust-cost threshold."""
    name = "trust"
    description = "Solve the sharing decision and compare embedding with belief erosion."

    def run(self) -> Dict[str, pd.DataFrame]:
        config = self.config
        params, tp = config.params.resolved(), config.tp
        delta, actual = optimal_reneging(tp)
        try:
            sensitivity = reneging_sensitivity(tp)
        except AtBoundaryError:
            sensitivity = 0.0
        theta, beneficial = theta_star(params, tp, config.cost)
        record = {
            "alphaHat": tp.alphaHat,
            "V": tp.V,
            "deltaOpt": delta,
            "alphaActual": actual,
            "dDeltaOpt_dV": sensitivity,
            "beta": tp.beta,
            "betaStar": beta_star(tp.V, tp.kappaLinear),
            "willDefect": will_defect(tp.V, tp.kappaLinear, tp.beta),
            "deltaAlpha": default_delta_alpha(params, tp),
            "thetaStar": theta,
            "decayToLearning": np.inf if params.lam == 0 else params.delta / params.lam,
            "ratchetBeneficial": beneficial,
        }
        return {"trust": pd.DataFrame([record])}


class PolicyCommand(BaseCommand):
    """Scenario run under an intervention schedule."""
    name = "policy"
    description = "Integrate a policy scenario and report welfare and trust."

    def run(self) -> Dict[str, pd.DataFrame]:
        config = self.config
        spec = self.require(config.scenario, "scenario")
        initial = spec.initial or _seed(self)
        scenario = PolicyScenario(schedule=spec.schedule, initial=initial, params=config.params,
                                  tp=config.tp, flags=spec.flags)
        traj, welfare_report, trust = run_scenario(scenario, config.integration)
        return {
            "trajectory": traj.to_frame(),
            "welfare": pd.DataFrame([welfare_report.model_dump()]),
            "trust": pd.DataFrame([trust.record()]),
        }


class VerifyAllCommand(BaseCommand):
    """The acceptance suite."""
    name = "verify-all"
    description = "Run every acceptance check and print PASS or FAIL per check."

    def run(self) -> Dict[str, pd.DataFrame]:
        from ..verification import run_verification
        return {"verification": run_verification()}

    def report(self, tables: Dict[str, pd.DataFrame]) -> List[str]:
        lines = []
        for row in tables["verification"].itertuples():
            status = "PASS" if row.passed else "FAIL"
            lines.append(f"{status} {row.check} ({row.seconds:.2f}s) {row.detail}")
        return lines
