"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`HKCubesError`. Errors describing an invalid argument also derive from
``ValueError`` so callers that only care about bad input can catch that.
Verification failures are *not* exceptions, see :mod:`hkcubes.report`.
"""

# =========================================================================== #
from typing import Any


class HKCubesError(Exception):
    """Root of every error raised by ``hkcubes``."""


class InvalidElement(HKCubesError, ValueError):
    """A group element index is outside ``0 .. order - 1``."""


class NotNormal(HKCubesError, ValueError):
    """A quotient was requested by a subgroup that is not normal."""


class InvalidDimension(HKCubesError, ValueError):
    pass


class DimensionMismatch(HKCubesError, ValueError):
    pass


class InvalidIndex(HKCubesError, ValueError):
    pass


class InvalidLetter(HKCubesError, ValueError):
    """A face word letter sits on a face that is not an upper face."""


class NotMember(HKCubesError, ValueError):
    pass


class NotEquivalence(HKCubesError, ValueError):
    pass


class NotInvariant(HKCubesError, ValueError):
    pass


class NotMinimal(HKCubesError, ValueError):
    pass


class InvalidSystem(HKCubesError, ValueError):
    """An action table violates the action axioms.

    ``triple`` holds the failing ``(g, h, x)`` (or ``(g, x)`` for
    permutation and identity failures) when one is known.
    """

    def __init__(self, msg: str, *, triple: tuple | None = None):
        super().__init__(msg)
        self.triple = triple


class InvalidVertexSet(HKCubesError, ValueError):
    pass


class TargetNotOrderD(HKCubesError, ValueError):
    pass


class NotApplicable(HKCubesError):
    """The precondition of a check does not hold for the given system."""


class InvalidParameter(HKCubesError, ValueError):
    pass


class InternalInvariantViolation(HKCubesError, AssertionError):
    """A computed object contradicts a known structural fact. Always a bug."""


class BudgetExceeded(HKCubesError):
    """A search visited more states than its budget allows.

    Carries partial-count diagnostics so that callers can report how far the
    computation got.
    """

    visited: int
    frontier: int
    budget: int
    label: str

    def __init__(
        self,
        label: str,
        *,
        visited: int = 0,
        frontier: int = 0,
        budget: int = 0,
        detail: str | None = None,
    ):
        self.label = label
        self.visited = visited
        self.frontier = frontier
        self.budget = budget
        self.detail = detail

        msg = (
            f"Budget exceeded in `{label}` (visited={visited}, "
            f"frontier={frontier}, budget={budget})."
        )
        if detail:
            msg += " " + detail
        super().__init__(msg)

    def diagnostics(self) -> dict[str, Any]:
        return dict(
            label=self.label,
            visited=self.visited,
            frontier=self.frontier,
            budget=self.budget,
            detail=self.detail,
        )


class ConfigError(HKCubesError, ValueError):
    """Malformed system configuration, anchored at a 1-based line/column."""

    def __init__(self, msg: str, *, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        self.reason = msg
        super().__init__(f"{msg} (line {line}, column {column})")
