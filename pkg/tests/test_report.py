# =========================================================================== #
import json

import numpy as np
import pytest
import yaml

# --------------------------------------------------------------------------- #
from hkcubes.report import WITNESS_LIMIT, Report, Suite, jsonable, render


def test_jsonable():
    data = jsonable(
        {1: np.int64(3), "a": np.array([[1, 2]]), "s": frozenset({2, 1}), "b": np.bool_(True)}
    )
    assert data == {"1": 3, "a": [[1, 2]], "s": [1, 2], "b": True}
    json.dumps(data)


class TestReport:
    def test_pass(self):
        report = Report.from_witnesses("empty", [], states_visited=4)
        assert report.status == "pass" and report.passed
        assert "failures" not in report.details

    def test_witness_limit(self):
        report = Report.from_witnesses("many", range(3 * WITNESS_LIMIT))
        assert report.status == "fail"
        assert len(report.witnesses) == WITNESS_LIMIT
        assert report.details["failures"] == 3 * WITNESS_LIMIT

    def test_not_applicable(self):
        report = Report.not_applicable("weakly-mixing", "single point")
        assert report.passed
        assert report.details["reason"] == "single point"


class TestSuite:
    def test_status(self):
        suite = Suite(name="s", data=dict(size=np.int64(8)))
        suite.add(Report.from_witnesses("a", []))
        suite.add(Report.from_witnesses("b", [], exhaustive=False))
        assert suite.passed and not suite.exhaustive
        assert suite.data["size"] == 8

        suite.add(Report.from_witnesses("c", [(0, 1)]))
        assert suite.status == "fail"

    def test_render(self):
        suite = Suite(name="s", data=dict(pairs=[(1, 0), (0, 1)]))
        suite.add(Report.from_witnesses("a", []))

        loaded = json.loads(render(suite, "json"))
        assert loaded["status"] == "pass"
        assert yaml.safe_load(render(suite, "yaml"))["name"] == "s"

        lines = render(suite, "tsv").splitlines()
        assert lines[0].split("\t")[0] == "check"
        assert lines[-2:] == ["0\t1", "1\t0"]

    def test_render_bad(self):
        with pytest.raises(ValueError):
            render(Suite(name="s"), "xml")
        with pytest.raises(ValueError):
            render([1, 2], "tsv")
