# tests/test_cli.py

import json
import numpy as np
import pandas as pd
import pytest
from adoptlab.base.command import BaseCommand
from adoptlab.cli.main import main
from adoptlab.cli.config import COMMANDS, SweepSpec, parse_config
from adoptlab.cli.io import MANIFEST_NAME, read_manifest
from adoptlab.dynamics import TRAJECTORY_COLUMNS
from adoptlab.exceptions import AssumptionViolationError, ConfigurationError, RegistrationError
from adoptlab.processor import RunProcessor
from adoptlab.registry import CommandRegistry

QUICK = {"stepSize": 0.05, "tMax": 20.0}


def write_config(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_minimal_config_takes_defaults():
    config = parse_config('{"command": "simulate"}')
    assert config.params.c0 == 1.0
    assert config.params.lam == 0.1
    assert config.integration.stepSize == 0.01
    assert config.seedState is None


def test_command_fills_and_must_match():
    assert parse_config("{}", command="trust").command == "trust"
    with pytest.raises(ConfigurationError, match="'simulate'"):
        parse_config('{"command": "simulate"}', command="trust")


def test_malformed_json_reports_position():
    with pytest.raises(ConfigurationError, match="line 1"):
        parse_config('{"command": ')
    with pytest.raises(ConfigurationError):
        parse_config("[1, 2]")


def test_unknown_keys_are_rejected():
    with pytest.raises(ConfigurationError):
        parse_config('{"command": "simulate", "stepsize": 0.1}')
    with pytest.raises(ConfigurationError):
        parse_config('{"command": "simulate", "params": {"kappa": 1.0}}')


def test_broken_ordering_names_the_inequality():
    with pytest.raises(AssumptionViolationError, match="cP < cG"):
        parse_config('{"command": "simulate", "params": {"cP": 1.5}}')


def test_sweep_spec_grid():
    spec = SweepSpec(variable="rho", start=0.0, stop=0.1, step=0.025)
    np.testing.assert_allclose(spec.grid(), [0.0, 0.025, 0.05, 0.075, 0.1])
    assert list(SweepSpec(variable="psiDev", values=[0.3, 0.1]).grid()) == [0.3, 0.1]
    with pytest.raises(ValueError):
        SweepSpec(variable="rho", start=0.0, stop=1.0)
    with pytest.raises(ValueError):
        SweepSpec(variable="rho", values=[0.1], start=0.0, stop=1.0, step=0.1)


def test_simulate_writes_trajectory_and_manifest(tmp_path):
    out = tmp_path / "run"
    path = write_config(tmp_path, {"command": "simulate", "integration": QUICK})
    assert main(["simulate", "--config", path, "--out", str(out)]) == 0

    lines = (out / "trajectory.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == ",".join(TRAJECTORY_COLUMNS) == "t,xG,xP,xR,e,c,alpha,phase"
    table = pd.read_csv(out / "trajectory.csv")
    assert np.all(np.diff(table["c"]) <= 0)
    np.testing.assert_allclose(table[["xG", "xP", "xR"]].sum(axis=1), 1.0, atol=1e-12)

    manifest = read_manifest(out / MANIFEST_NAME)
    assert manifest["params"]["lambda"] == 0.1
    assert manifest["params"]["eStar"] == 0.6
    assert manifest["outputDir"] == str(out)
    assert manifest["run"]["status"] == "ok"
    assert manifest["run"]["outputs"] == ["trajectory.csv"]
    assert manifest["run"]["error"] is None
    assert (out / "adoptlab.log").exists()


def test_manifest_reproduces_the_run(tmp_path):
    first = tmp_path / "first"
    path = write_config(tmp_path, {"command": "simulate", "integration": QUICK,
                                   "flags": {"trust": True}, "seedState": {
                                       "simplex": {"xG": 0.5, "xP": 0.45, "xR": 0.05},
                                       "c": 1.0, "alphaBelief": 0.7}})
    assert main(["simulate", "--config", path, "--out", str(first)]) == 0
    second = tmp_path / "second"
    assert main(["simulate", "--config", str(first / MANIFEST_NAME), "--out", str(second)]) == 0
    assert (first / "trajectory.csv").read_bytes() == (second / "trajectory.csv").read_bytes()


def test_configuration_errors_exit_with_one(tmp_path, capsys):
    bad = write_config(tmp_path, {"command": "simulate", "params": {"cP": 1.5}})
    assert main(["simulate", "--config", bad, "--out", str(tmp_path / "bad")]) == 1
    assert "cP < cG" in capsys.readouterr().err

    missing = str(tmp_path / "absent.json")
    assert main(["simulate", "--config", missing]) == 1

    out = tmp_path / "policy"
    path = write_config(tmp_path, {"command": "policy"}, "policy.json")
    assert main(["policy", "--config", path, "--out", str(out)]) == 1
    manifest = read_manifest(out / MANIFEST_NAME)
    assert manifest["run"]["status"] == "failed"
    assert manifest["run"]["error"]["type"] == "ConfigurationError"


def test_numerical_failure_exits_with_two(tmp_path):
    out = tmp_path / "trust"
    path = write_config(tmp_path, {"command": "trust", "params": {"B": 0.5}})
    assert main(["trust", "--config", path, "--out", str(out)]) == 2
    error = read_manifest(out / MANIFEST_NAME)["run"]["error"]
    assert error["type"] == "NoRootError"


def test_trust_command(tmp_path):
    out = tmp_path / "trust"
    path = write_config(tmp_path, {"command": "trust"})
    assert main(["trust", "--config", path, "--out", str(out)]) == 0
    row = pd.read_csv(out / "trust.csv").iloc[0]
    assert row["deltaOpt"] == pytest.approx(0.5)
    assert row["alphaActual"] == pytest.approx(0.2)
    assert row["thetaStar"] == pytest.approx(0.857, rel=1e-2)
    assert row["decayToLearning"] == pytest.approx(5.0)


def test_equilibria_command(tmp_path, capsys):
    out = tmp_path / "eq"
    path = write_config(tmp_path, {"command": "equilibria"})
    assert main(["equilibria", "--config", path, "--out", str(out)]) == 0
    table = pd.read_csv(out / "equilibria.csv")
    assert len(table) == 4
    statics = pd.read_csv(out / "comparative_statics.csv")
    checked = statics[statics["expectedSign"] != 0]
    assert len(checked) == 4
    assert (checked["sign"] == checked["expectedSign"]).all()
    stdout = capsys.readouterr().out
    assert "corner_G: stable" in stdout
    assert "corner_R: saddle" in stdout


def test_processor_rejects_other_configs():
    with pytest.raises(TypeError):
        RunProcessor({"command": "simulate"})


def test_registry_holds_every_command():
    assert CommandRegistry.list_commands() == list(COMMANDS)
    for name in COMMANDS:
        assert CommandRegistry.get_command(name).name == name
    with pytest.raises(RegistrationError):
        CommandRegistry.get_command("plot")
    with pytest.raises(RegistrationError):
        CommandRegistry.register("plot", object)


def test_base_command_requires_values():
    command = BaseCommand(parse_config('{"command": "policy"}'))
    with pytest.raises(NotImplementedError):
        command.run()
    with pytest.raises(ConfigurationError):
        command.require(None, "scenario")
    assert command.require(3, "scenario") == 3
    assert command.report({}) == []
