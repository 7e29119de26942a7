# =========================================================================== #
import enum
from typing import Annotated, Optional

import typer
import yaml
from pydantic import BaseModel, ValidationError

# --------------------------------------------------------------------------- #
from hkcubes import util
from hkcubes.config import Budgets, Output, WorkbenchConfig

logger = util.get_logger(__name__)

FlagConfig = Annotated[
    Optional[str],
    typer.Option("--config", help="Settings file, defaults to `configs/hkcubes.yaml`."),
]
FlagSystem = Annotated[
    str,
    typer.Option(
        "--system",
        "-s",
        help="Builtin name such as `rotation:4`, `heisenberg:2`, `a5` or a config file.",
    ),
]
FlagSubpath = Annotated[
    Optional[str],
    typer.Option(help="JSONPath of the system inside a larger config file."),
]
FlagGroup = Annotated[
    str,
    typer.Option("--group", "-g", help="Builtin group such as `sym:3` or `cyclic:4`."),
]
FlagD = Annotated[int, typer.Option("--d", "-d", help="Dimension or order.")]
FlagDMax = Annotated[
    Optional[int],
    typer.Option("--d", "-d", help="Largest order searched, defaults to `d_max`."),
]
FlagBudget = Annotated[
    Optional[int],
    typer.Option(help="Override every search budget (states per search)."),
]
class OutputFormat(str, enum.Enum):
    json = "json"
    tsv = "tsv"
    yaml = "yaml"


FlagOutput = Annotated[Optional[OutputFormat], typer.Option("--output", "-o")]
FlagExhaustive = Annotated[
    bool,
    typer.Option("--exhaustive", help="Never sample, check everything."),
]
FlagSample = Annotated[Optional[int], typer.Option(help="Sample size for sampled checks.")]
FlagSeed = Annotated[Optional[int], typer.Option(help="Seed for sampled checks.")]
FlagOracle = Annotated[
    bool,
    typer.Option("--oracle", help="Cross-check against brute-force oracles."),
]
FlagJsonl = Annotated[
    bool,
    typer.Option("--jsonl", help="Print the cube set as JSON lines instead."),
]
FlagRP = Annotated[
    bool, typer.Option("--rp", help="Check the NRP and RP chains up to `--d`.")
]


class ContextData(BaseModel):
    config: WorkbenchConfig

    @classmethod
    def typer_callback(
        cls,
        context: typer.Context,
        config_path: FlagConfig = None,
    ) -> None:

        if config_path is None:
            config = WorkbenchConfig()  # type: ignore
        else:
            try:
                with open(config_path, "r") as file:
                    raw = yaml.safe_load(file) or {}
                config = WorkbenchConfig.model_validate(raw)
            except (OSError, yaml.YAMLError, ValidationError) as err:
                logger.error("Bad settings file `%s`: %s", config_path, err)
                raise typer.Exit(2)

        self = cls(config=config)
        context.obj = self

    def budgets(self, budget: int | None) -> Budgets:
        return self.config.budgets.with_budget(budget)

    def output(self, output: OutputFormat | None) -> Output:
        return output.value if output is not None else self.config.output

    def sample(self, sample: int | None, exhaustive: bool) -> int | None:
        if exhaustive:
            return None
        return sample if sample is not None else self.config.sample

    def seed(self, seed: int | None) -> int:
        return seed if seed is not None else self.config.seed

    def d_max(self, d: int | None) -> int:
        return d if d is not None else self.config.d_max
