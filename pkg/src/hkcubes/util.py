# =========================================================================== #
import logging
import logging.config
import os
from os import path as p
from typing import Any, Dict

import yaml
from jsonpath_ng import parse
from pydantic import BaseModel

PATH_PACKAGE: str = p.realpath(p.dirname(__file__))
PATH_BASE: str = p.realpath(p.join(PATH_PACKAGE, "..", ".."))
PATH_CONFIGS: str = p.realpath(p.join("configs"))
PATH_ASSETS: str = p.realpath(p.join(PATH_BASE, "assets"))
PATH_LOGS: str = p.realpath(os.environ.get("HKCUBES_LOGS", p.join("logs")))


def ensure(dirpath: str):
    if p.isfile(dirpath):
        raise ValueError(f"`{dirpath}` should not be a file.")

    os.makedirs(dirpath, exist_ok=True)


class path:
    @staticmethod
    def package(*segments: str) -> str:
        return p.join(PATH_PACKAGE, *segments)

    @staticmethod
    def logs(*segments: str) -> str:
        return p.join(PATH_LOGS, *segments)

    @staticmethod
    def asset(*segments: str) -> str:
        return p.join(PATH_ASSETS, *segments)

    @staticmethod
    def config(*segments: str) -> str:
        return p.join(PATH_CONFIGS, *segments)


PATH_CONFIG_LOG = path.package("logging.yaml")


def merge(base: Dict[str, Any], update: Dict[str, Any]) -> Dict[str, Any]:
    """Recursive dictionary update, later files win."""
    out = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = merge(out[key], value)
        else:
            out[key] = value
    return out


def load(*paths: str) -> Any:
    """Load and merge yaml documents. A single document may be any node."""
    docs = []
    for filepath in paths:
        with open(filepath, "r") as file:
            docs.append(yaml.safe_load(file))

    if len(docs) == 1:
        return docs[0]

    data: Dict[str, Any] = {}
    for doc in docs:
        if not isinstance(doc, dict):
            raise ValueError("Only mappings can be merged.")
        data = merge(data, doc)
    return data


def find_subpath(data: Any, subpath: str | None) -> Any:
    """First match of the JSONPath ``subpath`` in ``data``."""
    if subpath is None:
        return data

    found = parse(subpath).find(data)
    if not found:
        raise ValueError(f"Nothing found at `{subpath}`.")

    return found[0].value


class BaseYAML(BaseModel):
    @classmethod
    def fromYAML(cls, *paths: str, subpath: str | None = None):
        return cls.model_validate(find_subpath(load(*paths), subpath))


def setup_logging(config_path: str = PATH_CONFIG_LOG):
    with open(config_path, "r") as file:
        config = yaml.safe_load(file)

    # NOTE: The log file lives under ``HKCUBES_LOGS``, not the package.
    file_handler = config.get("handlers", {}).get("file_json")
    if file_handler is not None:
        ensure(PATH_LOGS)
        file_handler["filename"] = path.logs(file_handler["filename"])

    logging.config.dictConfig(config)

    return config


DEFAULT_LOGGING_CONFIG = setup_logging()


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
