"""Log formatting for the ``hkcubes.jsonl`` log file.

Searches attach their counters with ``extra``, for instance
``logger.error(..., extra=dict(diagnostics=err.diagnostics()))``. Those keys
are written next to the selected record attributes so a failed run can be
inspected with ``jq``.
"""

# =========================================================================== #
import json
import logging
from typing import Any, Dict, FrozenSet, List

from rich.console import Console

# NOTE: Reports go to stdout, so the console handler must use stderr.
CONSOLE_LOG = Console(stderr=True)

RECORD_ATTRS: FrozenSet[str] = frozenset(
    logging.LogRecord("", 0, "", 0, "", None, None).__dict__
) | {"message", "asctime"}

FMT_KEYS_DEFAULT = ("levelname", "message", "created", "name", "funcName", "lineno")


class JSONFormatter(logging.Formatter):
    """One JSON object per record.

    ``fmt_keys`` selects record attributes, unknown names are dropped.
    Anything passed through ``extra`` is always kept.
    """

    fmt_keys: List[str]

    def __init__(self, *, fmt_keys: List[str] | None = None):
        super().__init__()
        keys = fmt_keys if fmt_keys is not None else FMT_KEYS_DEFAULT
        self.fmt_keys = [key for key in keys if key in RECORD_ATTRS]

    def extras(self, record: logging.LogRecord) -> Dict[str, Any]:
        return {
            key: value
            for key, value in record.__dict__.items()
            if key not in RECORD_ATTRS and not key.startswith("_")
        }

    def format(self, record: logging.LogRecord) -> str:
        record.message = record.getMessage()
        line = {key: getattr(record, key, None) for key in self.fmt_keys}
        line.update(self.extras(record))
        if record.exc_info:
            line["exc_info"] = self.formatException(record.exc_info)
        if record.stack_info:
            line["stack_info"] = self.formatStack(record.stack_info)

        return json.dumps(line, default=str)
