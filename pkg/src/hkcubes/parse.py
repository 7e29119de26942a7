"""System configuration files and builtin system names.

A configuration is YAML naming a builtin or describing a group and how it
acts::

    name: s3-regular
    group:
      permutations: ["(1 2)", "(1 2 3)"]
    action: regular

The group is one of ``table`` (a multiplication table of indices),
``permutations`` (generators in cycle notation on letters ``1 .. degree``)
or ``builtin``. The action is ``regular``, ``natural`` (a permutation group
on its letters), ``{coset: [...]}`` with subgroup generators, or
``{permutations: [...]}`` with one permutation of the points per group
generator. Errors are reported as ``ConfigError`` anchored at the line and
column of the offending text.
"""

# =========================================================================== #
import os
import re
from typing import Annotated, Any, Dict, List, Literal, NamedTuple, Sequence, Tuple

import numpy as np
import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

# --------------------------------------------------------------------------- #
from hkcubes import util, zoo
from hkcubes.config import DEFAULT_ACTION_CHECK, DEFAULT_GROUP_ORDER
from hkcubes.errors import ConfigError, HKCubesError
from hkcubes.groups import FiniteGroup
from hkcubes.systems import FiniteSystem
from hkcubes.util import BaseYAML

logger = util.get_logger(__name__)

PATTERN_BUILTIN = re.compile(r"^(?P<kind>[a-z0-9]+)(:(?P<arg>.*))?$")


class Anchor(NamedTuple):
    line: int
    column: int
    quoted: bool


def parse_cycles(text: str, degree: int | None = None) -> List[int]:
    """A permutation of ``0 .. degree - 1`` from disjoint cycle notation.

    Letters are ``1 .. degree``. Without ``degree`` the largest letter is
    used. Errors carry ``column`` as a 1-based offset into ``text``.
    """
    cycles: List[List[int]] = []
    pos, n = 0, len(text)
    while pos < n:
        char = text[pos]
        if char.isspace():
            pos += 1
            continue
        if char != "(":
            raise ConfigError(f"Expected `(`, found `{char}`.", column=pos + 1)
        opened, pos = pos, pos + 1
        cycle: List[int] = []
        while True:
            if pos >= n:
                raise ConfigError("Unclosed cycle.", column=opened + 1)
            char = text[pos]
            if char == ")":
                pos += 1
                break
            if char.isspace() or char == ",":
                pos += 1
                continue
            if not char.isdigit():
                raise ConfigError(f"Unexpected `{char}` in cycle.", column=pos + 1)
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            letter = int(text[start:pos])
            if letter < 1:
                raise ConfigError("Letters start at 1.", column=start + 1)
            if degree is not None and letter > degree:
                raise ConfigError(
                    f"Letter `{letter}` exceeds degree `{degree}`.", column=start + 1
                )
            if any(letter in c for c in cycles) or letter in cycle:
                raise ConfigError(f"Letter `{letter}` repeats.", column=start + 1)
            cycle.append(letter)
        cycles.append(cycle)

    m = degree if degree is not None else max((max(c) for c in cycles if c), default=1)
    perm = list(range(m))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            perm[a - 1] = b - 1
    return perm


def _largest_letter(texts: Sequence[str]) -> int:
    return max((int(k) for t in texts for k in re.findall(r"\d+", t)), default=1)


# --------------------------------------------------------------------------- #


class GroupSpec(BaseYAML):
    model_config = ConfigDict(extra="forbid")

    table: Annotated[List[List[int]] | None, Field(default=None)]
    permutations: Annotated[List[str] | None, Field(default=None)]
    degree: Annotated[int | None, Field(default=None, ge=1)]
    builtin: Annotated[str | None, Field(default=None)]
    generators: Annotated[List[int] | None, Field(default=None)]
    labels: Annotated[List[str] | None, Field(default=None)]
    name: Annotated[str | None, Field(default=None)]

    @model_validator(mode="after")
    def check_one_source(self):
        given = [k for k in ("table", "permutations", "builtin") if getattr(self, k) is not None]
        if len(given) != 1:
            raise ValueError(
                "Group needs exactly one of `table`, `permutations` or `builtin`."
            )
        return self


class CosetAction(BaseModel):
    model_config = ConfigDict(extra="forbid")

    coset: List[str | int]


class PermutationAction(BaseModel):
    model_config = ConfigDict(extra="forbid")

    permutations: List[str]
    points: Annotated[int | None, Field(default=None, ge=1)]


class SystemSpec(BaseYAML):
    model_config = ConfigDict(extra="forbid")

    name: Annotated[str | None, Field(default=None)]
    builtin: Annotated[str | None, Field(default=None)]
    group: Annotated[GroupSpec | None, Field(default=None)]
    action: Annotated[
        Literal["regular", "natural"] | CosetAction | PermutationAction,
        Field(default="regular"),
    ]
    labels: Annotated[List[str] | None, Field(default=None)]

    @model_validator(mode="after")
    def check_source(self):
        if (self.builtin is None) == (self.group is None):
            raise ValueError("System needs exactly one of `builtin` or `group`.")
        return self


class _Context:
    """Anchors of every node of a composed document, keyed by path."""

    def __init__(self, anchors: Dict[Tuple[Any, ...], Anchor], prefix: Tuple[Any, ...] = ()):
        self.anchors = anchors
        self.prefix = prefix

    def anchor(self, *path: Any) -> Anchor:
        path = self.prefix + tuple(path)
        while path not in self.anchors and path:
            path = path[:-1]
        return self.anchors.get(path, Anchor(1, 1, False))

    def error(
        self, msg: str, *path: Any, offset: int = 0, inside: bool = False
    ) -> ConfigError:
        anchor = self.anchor(*path)
        column = anchor.column + offset + (1 if anchor.quoted and inside else 0)
        return ConfigError(msg, line=anchor.line, column=column)

    def cycles(self, text: str, *path: Any, degree: int | None = None) -> List[int]:
        try:
            return parse_cycles(text, degree)
        except ConfigError as err:
            raise self.error(
                err.reason, *path, offset=err.column - 1, inside=True
            ) from err


def _anchors(node: yaml.Node, path: Tuple[Any, ...] = ()) -> Dict[Tuple[Any, ...], Anchor]:
    out = {
        path: Anchor(
            node.start_mark.line + 1,
            node.start_mark.column + 1,
            getattr(node, "style", None) in ("'", '"'),
        )
    }
    if isinstance(node, yaml.MappingNode):
        for key, value in node.value:
            out.update(_anchors(value, path + (key.value,)))
    elif isinstance(node, yaml.SequenceNode):
        for k, value in enumerate(node.value):
            out.update(_anchors(value, path + (k,)))
    return out


def _locate(data: Any, target: Any, path: Tuple[Any, ...] = ()) -> Tuple[Any, ...] | None:
    if data is target:
        return path
    items = (
        data.items()
        if isinstance(data, dict)
        else enumerate(data)
        if isinstance(data, list)
        else ()
    )
    for key, value in items:
        found = _locate(value, target, path + (key,))
        if found is not None:
            return found
    return None


# --------------------------------------------------------------------------- #


def _build_group(spec: GroupSpec, ctx: _Context, max_order: int) -> FiniteGroup:
    if spec.builtin is not None:
        return resolve_group(spec.builtin, ctx=ctx, path=("group", "builtin"))

    if spec.permutations is not None:
        degree = spec.degree or _largest_letter(spec.permutations)
        perms = [
            ctx.cycles(text, "group", "permutations", k, degree=degree)
            for k, text in enumerate(spec.permutations)
        ]
        group = FiniteGroup.from_permutations(
            perms, name=spec.name or "permutations", max_order=max_order
        )
        return group

    return FiniteGroup(
        spec.table,  # type: ignore[arg-type]
        labels=spec.labels,
        name=spec.name or "table",
        generators=spec.generators,
        max_order=max_order,
    )


def _permutation_index(G: FiniteGroup, perm: Sequence[int]) -> int | None:
    if G.permutations is None or len(perm) > G.permutations.shape[1]:
        return None
    padded = list(perm) + list(range(len(perm), G.permutations.shape[1]))
    hits = np.flatnonzero((G.permutations == padded).all(axis=1))
    return int(hits[0]) if hits.size else None


def _extend_action(G: FiniteGroup, images: Sequence[Sequence[int]], points: int) -> np.ndarray:
    """Action table from one permutation of the points per group generator."""
    images = np.array(images, dtype=np.int64)
    action = np.full((G.order, points), -1, dtype=np.int64)
    action[G.identity] = np.arange(points)
    frontier = [G.identity]
    while frontier:
        fresh = []
        for h in frontier:
            for s, perm in zip(G.generators, images):
                g = int(G.mult[s, h])
                if action[g, 0] < 0:
                    action[g] = perm[action[h]]
                    fresh.append(g)
        frontier = fresh
    return action


def _build_system(
    spec: SystemSpec, ctx: _Context, max_order: int, action_check: int
) -> FiniteSystem:
    if spec.builtin is not None:
        sys = resolve_builtin(spec.builtin, ctx=ctx, path=("builtin",))
        if spec.name:
            sys.name = spec.name
        return sys

    assert spec.group is not None
    try:
        G = _build_group(spec.group, ctx, max_order)
    except ConfigError:
        raise
    except HKCubesError as err:
        raise ctx.error(str(err), "group") from err
    name = spec.name or f"config:{G.name}"
    action = spec.action
    match action:
        case "regular":
            return zoo.regular(G, name=name)
        case "natural":
            if G.permutations is None:
                raise ctx.error("A `natural` action needs a permutation group.", "action")
            return FiniteSystem(
                G, G.permutations, labels=spec.labels, name=name, check_limit=action_check
            )
        case CosetAction():
            members: List[int] = []
            for k, item in enumerate(action.coset):
                if isinstance(item, int):
                    if not 0 <= item < G.order:
                        raise ctx.error(f"Element `{item}` outside the group.", "action", "coset", k)
                    members.append(item)
                    continue
                perm = ctx.cycles(item, "action", "coset", k)
                index = _permutation_index(G, perm)
                if index is None:
                    raise ctx.error(f"`{item}` is not in the group.", "action", "coset", k)
                members.append(index)
            return zoo.coset(G, members, name=name)
        case PermutationAction():
            if len(action.permutations) != len(G.generators):
                raise ctx.error(
                    f"Expected one permutation per group generator ({len(G.generators)}).",
                    "action",
                    "permutations",
                )
            points = action.points or _largest_letter(action.permutations)
            images = [
                ctx.cycles(text, "action", "permutations", k, degree=points)
                for k, text in enumerate(action.permutations)
            ]
            table = _extend_action(G, images, points)
            return FiniteSystem(
                G, table, labels=spec.labels, name=name, check_limit=action_check
            )
    raise ctx.error("Unknown action.", "action")


def parse_config(
    text: str,
    subpath: str | None = None,
    *,
    max_order: int = DEFAULT_GROUP_ORDER,
    action_check: int = DEFAULT_ACTION_CHECK,
) -> FiniteSystem:
    """Build a system from configuration text or a bare builtin name."""
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as err:
        mark = err.problem_mark or err.context_mark
        raise ConfigError(
            str(err.problem or err.context),
            line=mark.line + 1 if mark else 1,
            column=mark.column + 1 if mark else 1,
        ) from err

    anchors = _anchors(node) if node is not None else {}
    prefix: Tuple[Any, ...] = ()
    if subpath is not None:
        try:
            found = util.find_subpath(data, subpath)
        except Exception as err:
            raise ConfigError(f"Subpath `{subpath}`: {err}") from err
        prefix = _locate(data, found) or ()
        data = found
    ctx = _Context(anchors, prefix)

    if isinstance(data, str):
        return resolve_builtin(data.strip(), ctx=ctx)
    if not isinstance(data, dict):
        raise ctx.error("Expected a mapping or a builtin name.")

    try:
        spec = SystemSpec.model_validate(data)
    except ValidationError as err:
        first = err.errors()[0]
        loc = tuple(part for part in first["loc"] if isinstance(part, (int, str)))
        while loc and loc not in {k[len(prefix) :] for k in anchors if k[: len(prefix)] == prefix}:
            loc = loc[:-1]
        raise ctx.error(first["msg"], *loc) from err

    sys = _build_system(spec, ctx, max_order, action_check)
    logger.info("Parsed `%s` with %s points.", sys.name, sys.points)
    return sys


# --------------------------------------------------------------------------- #


def _integer(arg: str | None, ctx: _Context, path: Tuple[Any, ...], what: str) -> int:
    if arg is None or not arg.strip().isdigit():
        raise ctx.error(f"`{what}` needs a positive integer argument.", *path)
    return int(arg)


def resolve_group(
    name: str, *, ctx: _Context | None = None, path: Tuple[Any, ...] = ()
) -> FiniteGroup:
    """``cyclic:n``, ``sym:n``, ``alt:n``, ``dihedral:n``, ``heisenberg:p``."""
    ctx = ctx or _Context({})
    matched = PATTERN_BUILTIN.match(name.strip())
    if matched is None or matched.group("kind") not in zoo.GROUPS:
        raise ctx.error(f"Unknown group `{name}`.", *path)
    kind, arg = matched.group("kind"), matched.group("arg")
    try:
        return zoo.GROUPS[kind](_integer(arg, ctx, path, kind))
    except ConfigError:
        raise
    except HKCubesError as err:
        raise ctx.error(str(err), *path) from err


def _split_group(arg: str) -> Tuple[str, str]:
    """``sym:3:(1 2);(1 3)`` into ``sym:3`` and ``(1 2);(1 3)``."""
    parts = arg.split(":", 2)
    return ":".join(parts[:2]), parts[2] if len(parts) > 2 else ""


def resolve_builtin(
    name: str, *, ctx: _Context | None = None, path: Tuple[Any, ...] = ()
) -> FiniteSystem:
    """Builtin systems.

    ``rotation:n``, ``heisenberg:p``, ``dihedral:n``, ``symmetric:n``,
    ``a5``, ``s3``, ``regular:<group>``, ``coset:<group>:<cycles;...>`` and
    ``product:<system>+<system>``.
    """
    ctx = ctx or _Context({})
    name = name.strip()
    if name.startswith("product:"):
        return zoo.product_of(
            [resolve_builtin(part, ctx=ctx, path=path) for part in name[8:].split("+")]
        )

    matched = PATTERN_BUILTIN.match(name)
    if matched is None:
        raise ctx.error(f"Unknown system `{name}`.", *path)
    kind, arg = matched.group("kind"), matched.group("arg")

    try:
        match kind:
            case "a5":
                return zoo.a5_regular()
            case "s3":
                return zoo.regular(zoo.symmetric_group(3), name="s3")
            case "regular":
                return zoo.regular(resolve_group(arg or "", ctx=ctx, path=path))
            case "coset":
                group_name, cycles = _split_group(arg or "")
                G = resolve_group(group_name, ctx=ctx, path=path)
                members = []
                for text in filter(None, (c.strip() for c in cycles.split(";"))):
                    index = _permutation_index(G, ctx.cycles(text, *path))
                    if index is None:
                        raise ctx.error(f"`{text}` is not in `{G.name}`.", *path)
                    members.append(index)
                return zoo.coset(G, members, name=name)
            case builder if builder in zoo.BUILDERS:
                return zoo.BUILDERS[builder](_integer(arg, ctx, path, kind))
    except ConfigError:
        raise
    except HKCubesError as err:
        raise ctx.error(str(err), *path) from err

    raise ctx.error(f"Unknown system `{name}`.", *path)


def resolve_system(
    ref: str,
    subpath: str | None = None,
    *,
    max_order: int = DEFAULT_GROUP_ORDER,
    action_check: int = DEFAULT_ACTION_CHECK,
) -> FiniteSystem:
    """A configuration file path or a builtin name."""
    if os.path.isfile(ref):
        with open(ref, "r") as file:
            return parse_config(
                file.read(), subpath, max_order=max_order, action_check=action_check
            )
    if subpath is not None:
        raise ConfigError(f"`--subpath` needs a configuration file, `{ref}` is not one.")
    return resolve_builtin(ref)
