# =========================================================================== #
import json
import re
from pathlib import Path
from typing import Any, List

import pytest
from typer.testing import CliRunner

# --------------------------------------------------------------------------- #
from hkcubes import Command, cli, nrp, util
from hkcubes.__main__ import run
from hkcubes.parse import resolve_system
from hkcubes.report import TSV_HEADER, Report


@pytest.fixture(scope="module")
def app():
    return Command.create_typer()


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def load(stdout: str) -> Any:
    """The JSON document printed on stdout, ignoring log lines around it."""
    start = 0 if stdout.startswith("{") else stdout.index("\n{") + 1
    data, _ = json.JSONDecoder().raw_decode(stdout[start:])
    return data


def invoke(runner: CliRunner, app, args: List[str], code: int = 0):
    result = runner.invoke(app, args)
    assert result.exit_code == code, result.output
    return result


class TestNRP:
    def test_rotation(self, runner, app):
        result = invoke(runner, app, ["nrp", "--system", "rotation:4", "--d", "1"])
        data = load(result.stdout)
        assert data["status"] == "pass"
        assert data["data"]["class_sizes"] == [1, 1, 1, 1]
        assert data["data"]["quotient_size"] == 4

    def test_heisenberg(self, runner, app):
        result = invoke(runner, app, ["nrp", "-s", "heisenberg:2", "-d", "1"])
        data = load(result.stdout)
        assert data["data"]["classes"] == 4
        assert data["data"]["class_sizes"] == [2, 2, 2, 2]
        assert all(r["status"] != "fail" for r in data["reports"])

    def test_a5(self, runner, app):
        result = invoke(runner, app, ["nrp", "-s", "a5", "-d", "1"])
        data = load(result.stdout)
        assert data["data"]["class_sizes"] == [60]

    def test_rp_chain(self, runner, app):
        result = invoke(runner, app, ["nrp", "-s", "heisenberg:2", "-d", "2", "--rp"])
        checks = {r["check"]: r for r in load(result.stdout)["reports"]}
        assert checks["elementary-chain[2]"]["status"] == "pass"

    def test_oracle(self, runner, app):
        result = invoke(runner, app, ["nrp", "-s", "dihedral:4", "-d", "1", "--oracle"])
        checks = [r["check"] for r in load(result.stdout)["reports"]]
        assert "oracle:nrp[1]" in checks
        assert "oracle:canonical[1]" in checks

    def test_tsv(self, runner, app):
        result = invoke(
            runner, app, ["nrp", "-s", "rotation:4", "-d", "1", "--output", "tsv"]
        )
        lines = result.stdout.strip().splitlines()
        header = lines.index("\t".join(TSV_HEADER))
        assert lines[header + 1].split("\t")[1] == "pass"
        assert "x\ty" in lines

    def test_failure_exits_one(self, runner, app, monkeypatch: pytest.MonkeyPatch):
        def failing(*args, **kwargs) -> Report:
            return Report.from_witnesses("canonical[1]", [dict(pair=[0, 1])])

        monkeypatch.setattr(nrp, "check_canonical", failing)
        result = invoke(runner, app, ["nrp", "-s", "rotation:4", "-d", "1"], code=1)
        assert load(result.stdout)["status"] == "fail"


class TestCommands:
    def test_cubes(self, runner, app):
        result = invoke(runner, app, ["cubes", "-s", "rotation:4", "-d", "2", "--oracle"])
        data = load(result.stdout)
        assert data["data"]["size"] == 64
        assert data["status"] == "pass"

    def test_cubes_jsonl(self, runner, app):
        result = invoke(runner, app, ["cubes", "-s", "rotation:4", "-d", "1", "--jsonl"])
        rows = [
            json.loads(line)
            for line in result.stdout.splitlines()
            if re.fullmatch(r"\[\d+(, \d+)*\]", line)
        ]
        assert len(rows) == 16
        assert rows == sorted(rows)
        assert all(len(row) == 2 for row in rows)

    def test_rp(self, runner, app):
        result = invoke(runner, app, ["rp", "-s", "heisenberg:2", "-d", "1", "--oracle"])
        data = load(result.stdout)
        assert data["data"]["classes"] == 8
        assert data["status"] == "pass"
        assert "oracle:rp[1]" in [r["check"] for r in data["reports"]]

    def test_order(self, runner, app):
        result = invoke(runner, app, ["order", "-s", "heisenberg:2", "-d", "3"])
        data = load(result.stdout)["data"]
        assert data["order"] == 2
        assert data["nilpotency_class"] == 2
        assert data["shortcut"] and data["skipped_orders"] == [1]

    def test_order_truncated(self, runner, app):
        result = invoke(runner, app, ["order", "-s", "heisenberg:2", "-d", "1"])
        assert load(result.stdout)["data"]["order"] == ">=2"

    def test_tower(self, runner, app):
        result = invoke(runner, app, ["tower", "-s", "heisenberg:2"])
        data = load(result.stdout)
        assert data["status"] == "complete"
        assert [(lv["size"], lv["target_size"], lv["K_order"]) for lv in data["levels"]] == [
            (8, 4, 2),
            (4, 1, 4),
        ]

    def test_axioms(self, runner, app):
        result = invoke(runner, app, ["axioms", "-s", "rotation:4", "-d", "2"])
        data = load(result.stdout)
        assert data["status"] == "pass"
        assert data["data"]["size"] == 64

    def test_appendix(self, runner, app):
        result = invoke(runner, app, ["appendix", "-g", "cyclic:2", "-d", "2", "--seed", "3"])
        data = load(result.stdout)
        assert (data["data"]["hk_size"], data["data"]["face_size"]) == (8, 4)
        assert len(data["reports"]) == 10
        assert data["status"] == "pass"

    def test_demo_sturmian(self, runner, app):
        result = invoke(runner, app, ["demo-sturmian", "--n-max", "200"])
        data = load(result.stdout)
        assert data["status"] == "pass"
        assert data["reports"][0]["check"] == "sturmian-orientation"

    def test_yaml(self, runner, app):
        result = invoke(runner, app, ["order", "-s", "rotation:4", "-o", "yaml"])
        assert "order: 1" in result.stdout
        assert "shortcut: false" in result.stdout


class TestExitCodes:
    def test_budget(self, runner, app):
        invoke(runner, app, ["nrp", "-s", "heisenberg:2", "--budget", "10"], code=2)

    def test_unknown_system(self, runner, app):
        invoke(runner, app, ["nrp", "-s", "no-such-system"], code=2)

    def test_bad_dimension(self, runner, app):
        invoke(runner, app, ["cubes", "-s", "rotation:4", "-d", "-1"], code=2)

    def test_usage(self, runner, app):
        invoke(runner, app, ["nrp"], code=2)

    def test_missing_config(self, runner, app, tmp_path: Path):
        path = tmp_path / "missing.yaml"
        invoke(runner, app, ["--config", str(path), "order", "-s", "rotation:4"], code=2)

    def test_bad_config(self, runner, app, tmp_path: Path):
        path = tmp_path / "hkcubes.yaml"
        path.write_text("budgets: [\n")
        invoke(runner, app, ["--config", str(path), "order", "-s", "rotation:4"], code=2)

    def test_config(self, runner, app, tmp_path: Path):
        path = tmp_path / "hkcubes.yaml"
        path.write_text("output: yaml\n")
        result = invoke(runner, app, ["--config", str(path), "order", "-s", "rotation:4"])
        assert "order: 1" in result.stdout

    def test_config_d_max(self, runner, app, tmp_path: Path):
        path = tmp_path / "hkcubes.yaml"
        path.write_text("d_max: 1\n")
        args = ["--config", str(path), "order", "-s", "heisenberg:2"]
        data = load(invoke(runner, app, args).stdout)["data"]
        assert (data["d_max"], data["order"]) == (1, ">=2")

        args = ["--config", str(path), "tower", "-s", "heisenberg:2"]
        assert load(invoke(runner, app, args).stdout)["status"] == "truncated"

        args = ["--config", str(path), "order", "-s", "heisenberg:2", "-d", "2"]
        assert load(invoke(runner, app, args).stdout)["data"]["order"] == 2

    def test_config_action_check(
        self, runner, app, tmp_path: Path, monkeypatch: pytest.MonkeyPatch
    ):
        seen = {}

        def resolve(ref, subpath=None, **kwargs):
            seen.update(kwargs)
            return resolve_system(ref, subpath, **kwargs)

        monkeypatch.setattr(cli, "resolve_system", resolve)
        path = tmp_path / "hkcubes.yaml"
        path.write_text("budgets:\n  action_check: 10\n")
        system = util.path.asset("systems", "s3-natural.yaml")
        invoke(runner, app, ["--config", str(path), "rp", "-s", system])
        assert seen["action_check"] == 10

    def test_run(self):
        assert run(["order", "-s", "rotation:4"]) == 0
        assert run(["nrp", "-s", "rotation:4", "--budget", "1"]) == 2
