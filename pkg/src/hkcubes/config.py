# =========================================================================== #
from typing import Annotated, ClassVar, Literal

from pydantic import BaseModel, Field
from yaml_settings_pydantic import (
    BaseYamlSettings,
    YamlFileConfigDict,
    YamlSettingsConfigDict,
)

# --------------------------------------------------------------------------- #
from hkcubes import util

# NOTE: Library functions take these as keyword defaults. The settings object
#       below only feeds the command line, which passes values explicitly.
DEFAULT_CUBE_BUDGET = 2**24
DEFAULT_TUPLE_BUDGET = 2**24
DEFAULT_REWRITE_BUDGET = 10**6
DEFAULT_CORNERS_EXHAUSTIVE = 2**22
DEFAULT_PAIR_BUDGET = 2**22
DEFAULT_ACTION_CHECK = 2**20
DEFAULT_GROUP_ORDER = 4096
DEFAULT_D_MAX = 3
DEFAULT_SAMPLE = 1000
DEFAULT_SEED = 0

# NOTE: Exhaustive associativity is ``order**3`` lookups.
ASSOCIATIVITY_EXHAUSTIVE = 256
ASSOCIATIVITY_SAMPLES = 10_000

PATH_CONFIG = util.path.config("hkcubes.yaml")

Output = Literal["json", "tsv", "yaml"]


class Budgets(BaseModel):
    cubes: Annotated[
        int,
        Field(
            default=DEFAULT_CUBE_BUDGET,
            gt=0,
            description="Configurations per cube set closure.",
        ),
    ]
    tuples: Annotated[
        int,
        Field(
            default=DEFAULT_TUPLE_BUDGET,
            gt=0,
            description="Elements per generated tuple group.",
        ),
    ]
    rewrite: Annotated[
        int,
        Field(default=DEFAULT_REWRITE_BUDGET, gt=0),
    ]
    corners_exhaustive: Annotated[
        int,
        Field(
            default=DEFAULT_CORNERS_EXHAUSTIVE,
            gt=0,
            description="Largest corner space enumerated exhaustively.",
        ),
    ]
    pairs: Annotated[int, Field(default=DEFAULT_PAIR_BUDGET, gt=0)]
    action_check: Annotated[int, Field(default=DEFAULT_ACTION_CHECK, gt=0)]
    group_order: Annotated[int, Field(default=DEFAULT_GROUP_ORDER, gt=0)]

    def with_budget(self, budget: int | None) -> "Budgets":
        """Apply a single ``--budget`` override to every search budget."""
        if budget is None:
            return self

        return self.model_copy(
            update=dict(cubes=budget, tuples=budget, pairs=budget),
        )


class WorkbenchConfig(BaseYamlSettings):
    budgets: Annotated[Budgets, Field(default_factory=Budgets)]
    d_max: Annotated[int, Field(default=DEFAULT_D_MAX, ge=1)]
    sample: Annotated[int, Field(default=DEFAULT_SAMPLE, gt=0)]
    seed: Annotated[int, Field(default=DEFAULT_SEED)]
    output: Annotated[Output, Field(default="json")]

    model_config: ClassVar[YamlSettingsConfigDict] = YamlSettingsConfigDict(
        yaml_files={
            PATH_CONFIG: YamlFileConfigDict(required=False, subpath=None),
        },
        env_prefix="HKCUBES_",
        env_nested_delimiter="__",
    )
