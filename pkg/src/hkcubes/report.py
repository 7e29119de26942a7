"""Structured results of verification checks and their rendering.

Checks never raise when the property fails. They return a :class:`Report`
whose ``status`` is ``pass``, ``fail`` or ``not-applicable`` together with a
bounded list of witnesses. Sampled checks always carry ``exhaustive=False``.
"""

# =========================================================================== #
import json
from typing import Annotated, Any, Dict, Iterable, List, Literal

import numpy as np
import yaml
from pydantic import BaseModel, BeforeValidator, Field, computed_field

# --------------------------------------------------------------------------- #
from hkcubes import util

Status = Literal["pass", "fail", "not-applicable"]
WITNESS_LIMIT = 10

logger = util.get_logger(__name__)


def jsonable(obj: Any) -> Any:
    """Replace ``numpy`` scalars and arrays by plain python values."""
    match obj:
        case np.ndarray():
            return obj.tolist()
        case np.integer():
            return int(obj)
        case np.floating():
            return float(obj)
        case np.bool_():
            return bool(obj)
        case BaseModel():
            return jsonable(obj.model_dump(mode="json"))
        case dict():
            return {str(k): jsonable(v) for k, v in obj.items()}
        case list() | tuple() | set() | frozenset():
            items = [jsonable(v) for v in obj]
            return sorted(items) if isinstance(obj, (set, frozenset)) else items
        case _:
            return obj


class Report(BaseModel):
    check: str
    status: Status
    exhaustive: bool = True
    states_visited: int = 0
    witnesses: Annotated[
        List[Any],
        Field(default_factory=list),
        BeforeValidator(jsonable),
    ]
    details: Annotated[
        Dict[str, Any],
        Field(default_factory=dict),
        BeforeValidator(jsonable),
    ]

    @classmethod
    def from_witnesses(
        cls,
        check: str,
        witnesses: Iterable[Any],
        *,
        exhaustive: bool = True,
        states_visited: int = 0,
        limit: int = WITNESS_LIMIT,
        **details: Any,
    ) -> "Report":
        """Pass iff there are no witnesses; keeps at most ``limit`` of them."""
        kept, total = [], 0
        for witness in witnesses:
            if total < limit:
                kept.append(witness)
            total += 1

        if total:
            details.setdefault("failures", total)
        if not exhaustive:
            logger.warning("Check `%s` was sampled, not exhaustive.", check)

        return cls(
            check=check,
            status="fail" if total else "pass",
            exhaustive=exhaustive,
            states_visited=states_visited,
            witnesses=kept,
            details=details,
        )

    @classmethod
    def not_applicable(cls, check: str, reason: str, **details: Any) -> "Report":
        return cls(check=check, status="not-applicable", details=dict(reason=reason, **details))

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def row(self) -> List[str]:
        return [
            self.check,
            self.status,
            str(self.exhaustive).lower(),
            str(self.states_visited),
            str(len(self.witnesses)),
        ]


class Suite(BaseModel):
    name: str
    reports: Annotated[List[Report], Field(default_factory=list)]
    data: Annotated[Dict[str, Any], Field(default_factory=dict), BeforeValidator(jsonable)]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def status(self) -> Status:
        return "pass" if all(r.passed for r in self.reports) else "fail"

    @computed_field  # type: ignore[prop-decorator]
    @property
    def exhaustive(self) -> bool:
        return all(r.exhaustive for r in self.reports)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def add(self, report: Report) -> Report:
        self.reports.append(report)
        return report


TSV_HEADER = ["check", "status", "exhaustive", "states_visited", "witnesses"]


def render_tsv(obj: Any) -> str:
    """Tab separated rendering.

    Suites and reports become one row per check. Relations (anything with
    ``pairs``) become one sorted ``x<TAB>y`` row per pair.
    """
    lines: List[List[str]] = []
    match obj:
        case Suite():
            lines.append(TSV_HEADER)
            lines += [r.row() for r in obj.reports]
            pairs = obj.data.get("pairs")
            if pairs:
                lines.append(["x", "y"])
                lines += [[str(x), str(y)] for x, y in sorted(pairs)]
        case Report():
            lines += [TSV_HEADER, obj.row()]
        case dict():
            data = jsonable(obj)
            if "pairs" in data:
                lines += [[str(x), str(y)] for x, y in sorted(data["pairs"])]
            else:
                lines += [[str(k), json.dumps(v)] for k, v in data.items()]
        case _:
            raise ValueError(f"Cannot render `{type(obj).__name__}` as tsv.")

    return "\n".join("\t".join(line) for line in lines)


def render(obj: Any, output: str = "json") -> str:
    data = jsonable(obj)
    match output:
        case "json":
            return json.dumps(data, indent=2)
        case "yaml":
            return yaml.safe_dump(data, sort_keys=False)
        case "tsv":
            return render_tsv(obj)
        case bad:
            raise ValueError(f"Unknown output format `{bad}`.")
