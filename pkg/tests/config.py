# =========================================================================== #
from typing import Annotated, ClassVar

from pydantic import Field
from yaml_settings_pydantic import (
    BaseYamlSettings,
    YamlFileConfigDict,
    YamlSettingsConfigDict,
)

# --------------------------------------------------------------------------- #
from hkcubes import util
from hkcubes.config import Budgets

CONFIG_PATH_PYTEST = util.path.config("pytest.yaml")


# NOTE: Budgets here are deliberately small so that a regression which blows
#       up a search fails fast instead of hanging the suite.
class TestConfig(BaseYamlSettings):
    __test__ = False

    model_config: ClassVar[YamlSettingsConfigDict] = YamlSettingsConfigDict(
        yaml_files={
            CONFIG_PATH_PYTEST: YamlFileConfigDict(subpath=None, required=False),
        },
        env_prefix="HKCUBES_TEST_",
        extra="allow",
    )

    budgets: Annotated[Budgets, Field(default_factory=Budgets)]
    sample: Annotated[int, Field(default=200, gt=0)]
    seed: Annotated[int, Field(default=0)]
    hypothesis_examples: Annotated[int, Field(default=50, gt=0)]
