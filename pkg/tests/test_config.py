# =========================================================================== #
import json
import logging

import pytest
from pydantic import ValidationError

# --------------------------------------------------------------------------- #
from hkcubes import util
from hkcubes.config import DEFAULT_CUBE_BUDGET, Budgets, WorkbenchConfig
from hkcubes.logger import JSONFormatter
from hkcubes.parse import GroupSpec, SystemSpec

from .config import TestConfig


def test_defaults(config_workbench: WorkbenchConfig):
    assert config_workbench.budgets.cubes == DEFAULT_CUBE_BUDGET
    assert config_workbench.output in ("json", "yaml", "tsv")
    assert config_workbench.d_max >= 1


def test_test_config(config: TestConfig):
    assert config.sample > 0
    assert config.budgets.cubes > 0


def test_with_budget():
    budgets = Budgets()
    assert budgets.with_budget(None) is budgets

    small = budgets.with_budget(10)
    assert (small.cubes, small.tuples, small.pairs) == (10, 10, 10)
    assert small.rewrite == budgets.rewrite, "Rewrite steps are not a search budget."


def test_validation():
    with pytest.raises(ValidationError):
        Budgets(cubes=0)

    with pytest.raises(ValidationError):
        WorkbenchConfig(output="xml")  # type: ignore


def test_from_yaml():
    path = util.path.asset("systems", "s3-regular.yaml")
    group = GroupSpec.fromYAML(path, subpath="group")
    assert group.permutations == ["(1 2)", "(1 2 3)"]

    spec = SystemSpec.fromYAML(path)
    assert spec.action == "regular"
    assert spec.name == "s3-regular"

    path = util.path.asset("systems", "zoo.yaml")
    spec = SystemSpec.fromYAML(path, subpath="systems.heis2")
    assert spec.builtin == "heisenberg:2"


def test_load_merges(tmp_path):
    first, second = tmp_path / "a.yaml", tmp_path / "b.yaml"
    first.write_text("budgets:\n  cubes: 10\n  pairs: 20\nseed: 1\n")
    second.write_text("budgets:\n  cubes: 30\n")

    data = util.load(str(first), str(second))
    assert data == dict(budgets=dict(cubes=30, pairs=20), seed=1)
    assert util.load(str(second)) == dict(budgets=dict(cubes=30))


def test_find_subpath():
    data = dict(a=dict(b=[1, 2]))
    assert util.find_subpath(data, None) is data
    assert util.find_subpath(data, "a.b") == [1, 2]
    with pytest.raises(ValueError):
        util.find_subpath(data, "a.c")


def test_json_formatter():
    formatter = JSONFormatter(fmt_keys=["levelname", "message", "name", "nonsense"])
    record = logging.LogRecord("hkcubes.test", logging.INFO, __file__, 1, "x=%s", (3,), None)
    line = json.loads(formatter.format(record))
    assert line == dict(levelname="INFO", message="x=3", name="hkcubes.test")

    record.diagnostics = dict(visited=17, budget=16)
    line = json.loads(formatter.format(record))
    assert line["diagnostics"] == dict(visited=17, budget=16)


def test_get_logger():
    logger = util.get_logger("hkcubes.test")
    assert logger.getEffectiveLevel() == logging.DEBUG
