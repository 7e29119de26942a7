# =========================================================================== #
import sys
from typing import Sequence

# --------------------------------------------------------------------------- #
from hkcubes import Command


def run(argv: Sequence[str]) -> int:
    """Run the workbench on ``argv`` and return its exit code."""
    cli = Command.create_typer()
    try:
        cli(args=list(argv), prog_name="hkcubes")
    except SystemExit as err:
        if err.code is None:
            return 0
        return err.code if isinstance(err.code, int) else 1
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
