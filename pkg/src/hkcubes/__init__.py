# =========================================================================== #
import typer

# --------------------------------------------------------------------------- #
from hkcubes import flags
from hkcubes.cli import WorkbenchCommand

__version__ = "0.1.0"


class Command:

    @classmethod
    def create_typer(cls):
        cli = WorkbenchCommand.create_typer()
        cli.callback()(flags.ContextData.typer_callback)
        return cli
