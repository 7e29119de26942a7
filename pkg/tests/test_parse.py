# =========================================================================== #
import pytest

# --------------------------------------------------------------------------- #
from hkcubes import util
from hkcubes.errors import ConfigError
from hkcubes.parse import (
    parse_config,
    parse_cycles,
    resolve_builtin,
    resolve_group,
    resolve_system,
)

PATH_ZOO = util.path.asset("systems", "zoo.yaml")


class TestCycles:
    def test_parse(self):
        assert parse_cycles("(1 2)(3)") == [1, 0, 2]
        assert parse_cycles("(1,2,3)") == [1, 2, 0]
        assert parse_cycles("(1 2)", degree=4) == [1, 0, 2, 3]
        assert parse_cycles("", degree=3) == [0, 1, 2]
        assert parse_cycles("()") == [0]

    @pytest.mark.parametrize(
        "text, reason, column",
        [
            ("(1 2", "Unclosed cycle.", 1),
            ("(1 2) x", "Expected `(`, found `x`.", 7),
            ("(1 0)", "Letters start at 1.", 4),
            ("(1 2 1)", "Letter `1` repeats.", 6),
            ("(1 a)", "Unexpected `a` in cycle.", 4),
        ],
    )
    def test_errors(self, text: str, reason: str, column: int):
        with pytest.raises(ConfigError) as err:
            parse_cycles(text)
        assert err.value.reason == reason
        assert err.value.column == column
        assert err.value.line == 1

    def test_degree(self):
        with pytest.raises(ConfigError) as err:
            parse_cycles("(1 4)", degree=3)
        assert err.value.column == 4


class TestBuiltins:
    def test_systems(self):
        assert resolve_builtin("rotation:5").points == 5
        assert resolve_builtin("heisenberg:2").points == 8
        assert resolve_builtin("symmetric:4").points == 4
        assert resolve_builtin("s3").name == "s3"
        assert resolve_builtin("regular:cyclic:5").points == 5
        assert resolve_builtin("coset:sym:3:(1 2)").points == 3
        assert resolve_builtin("product:rotation:2+rotation:3").points == 6

    def test_groups(self):
        assert resolve_group("alt:4").order == 12
        assert resolve_group("dihedral:5").order == 10
        assert resolve_group("heisenberg:3").order == 27

    @pytest.mark.parametrize(
        "name", ["torus:3", "rotation:x", "rotation", "coset:sym:3:(1 4)"]
    )
    def test_unknown(self, name: str):
        with pytest.raises(ConfigError):
            resolve_builtin(name)

    def test_bad_group(self):
        with pytest.raises(ConfigError):
            resolve_group("heisenberg:4")
        with pytest.raises(ConfigError):
            resolve_group("free:2")


class TestConfig:
    def test_assets(self):
        regular = resolve_system(util.path.asset("systems", "s3-regular.yaml"))
        assert regular.name == "s3-regular"
        assert regular.points == 6
        assert regular.is_minimal

        natural = resolve_system(util.path.asset("systems", "s3-natural.yaml"))
        assert natural.points == 3
        assert natural.labels == ("a", "b", "c")
        assert natural.action_exhaustive

        path = util.path.asset("systems", "s3-natural.yaml")
        assert not resolve_system(path, action_check=10).action_exhaustive

        table = resolve_system(util.path.asset("systems", "z4-table.yaml"))
        assert table.points == 4
        assert table.group.is_abelian

    @pytest.mark.parametrize(
        "subpath, points",
        [
            ("systems.heis2", 8),
            ('systems."d4-on-vertices"', 4),
            ('systems."a4-on-cosets"', 3),
            ("systems.rotation6", 6),
        ],
    )
    def test_subpath(self, subpath: str, points: int):
        sys = resolve_system(PATH_ZOO, subpath)
        assert sys.points == points
        assert sys.is_minimal

    def test_subpath_errors(self):
        with pytest.raises(ConfigError):
            resolve_system(PATH_ZOO, "systems.nothing")
        with pytest.raises(ConfigError):
            resolve_system("rotation:3", "systems.heis2")

    def test_anchored_cycle_error(self):
        text = 'group:\n  permutations: ["(1 2", "(1 2 3)"]\n'
        with pytest.raises(ConfigError) as err:
            parse_config(text)
        assert err.value.reason == "Unclosed cycle."
        assert (err.value.line, err.value.column) == (2, 19)

    def test_schema_errors(self):
        with pytest.raises(ConfigError) as err:
            parse_config("group:\n  permutation: ['(1 2)']\n")
        assert err.value.line == 2

        with pytest.raises(ConfigError):
            parse_config("builtin: rotation:3\ngroup:\n  builtin: cyclic:3\n")

    def test_action_errors(self):
        table = "group:\n  table: [[0, 1], [1, 0]]\naction: natural\n"
        with pytest.raises(ConfigError) as err:
            parse_config(table)
        assert err.value.line == 3

        counts = (
            "group:\n  builtin: dihedral:4\n"
            "action:\n  permutations: ['(1 2 3 4)']\n"
        )
        with pytest.raises(ConfigError):
            parse_config(counts)

    def test_yaml_error(self):
        with pytest.raises(ConfigError) as err:
            parse_config("group: [\n")
        assert err.value.line >= 1

    def test_bare_builtin(self):
        assert parse_config("rotation:7").points == 7

    def test_group_order_limit(self):
        with pytest.raises(ConfigError):
            parse_config("group:\n  permutations: ['(1 2 3 4 5 6)', '(1 2)']\n", max_order=100)
