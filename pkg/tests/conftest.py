# =========================================================================== #
import pytest
from hypothesis import settings

# --------------------------------------------------------------------------- #
from hkcubes import zoo
from hkcubes.config import WorkbenchConfig
from hkcubes.groups import FiniteGroup
from hkcubes.systems import FiniteSystem
from tests.config import TestConfig

PYTEST_STASHKEY_CONFIG = pytest.StashKey[TestConfig]()
PYTEST_STASHKEY_CONFIG_WORKBENCH = pytest.StashKey[WorkbenchConfig]()


# NOTE: Using the stash means that there are many cases where the number of
#       fixtures used is fewer! Systems are session scoped because cube sets
#       and slices are cached per system object.
def pytest_configure(config: pytest.Config):
    test_config = TestConfig()  # type: ignore
    config.stash[PYTEST_STASHKEY_CONFIG] = test_config
    config.stash[PYTEST_STASHKEY_CONFIG_WORKBENCH] = WorkbenchConfig()  # type: ignore

    settings.register_profile(
        "hkcubes", max_examples=test_config.hypothesis_examples, deadline=None
    )
    settings.load_profile("hkcubes")


@pytest.fixture
def config(pytestconfig: pytest.Config) -> TestConfig:
    return pytestconfig.stash[PYTEST_STASHKEY_CONFIG]


@pytest.fixture
def config_workbench(pytestconfig: pytest.Config) -> WorkbenchConfig:
    return pytestconfig.stash[PYTEST_STASHKEY_CONFIG_WORKBENCH]


@pytest.fixture(scope="session")
def S3() -> FiniteGroup:
    return zoo.symmetric_group(3)


@pytest.fixture(scope="session")
def Z2() -> FiniteGroup:
    return zoo.cyclic_group(2)


@pytest.fixture(scope="session")
def Z4() -> FiniteGroup:
    return zoo.cyclic_group(4)


@pytest.fixture(scope="session")
def rotation2() -> FiniteSystem:
    return zoo.rotation(2)


@pytest.fixture(scope="session")
def rotation4() -> FiniteSystem:
    return zoo.rotation(4)


@pytest.fixture(scope="session")
def s3_regular(S3: FiniteGroup) -> FiniteSystem:
    return zoo.regular(S3, name="s3")


@pytest.fixture(scope="session")
def s3_natural() -> FiniteSystem:
    return zoo.symmetric(3)


@pytest.fixture(scope="session")
def heis2() -> FiniteSystem:
    return zoo.heisenberg_mod(2)


@pytest.fixture(scope="session")
def heis3() -> FiniteSystem:
    return zoo.heisenberg_mod(3)


@pytest.fixture(scope="session")
def a5() -> FiniteSystem:
    return zoo.a5_regular()


@pytest.fixture(scope="session")
def small_minimal(rotation4, s3_regular, s3_natural, heis2):
    """Minimal zoo systems with at most 8 points."""
    return [rotation4, s3_regular, s3_natural, heis2, zoo.dihedral(4), zoo.rotation(6)]
