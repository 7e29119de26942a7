"""Maximal factors of order ``d``, system order and the factor tower.

A minimal system of order ``s`` factors as

    X = X/NRP^[s] -> X/NRP^[s-1] -> ... -> X/NRP^[1] -> X/NRP^[0] = •

and each arrow is a principal extension by an abelian structure group
``K_d``. The tower is computed, never assumed: every structure group
property is checked and a failure raises ``InternalInvariantViolation``.
"""

# =========================================================================== #
from typing import Annotated, Any, Dict, List, Literal, NamedTuple, Tuple

import numpy as np
from pydantic import BaseModel, Field

# --------------------------------------------------------------------------- #
from hkcubes import util
from hkcubes.config import DEFAULT_CUBE_BUDGET, DEFAULT_D_MAX
from hkcubes.cubespace import cube_lookup
from hkcubes.cubes import vertex_count
from hkcubes.errors import (
    HKCubesError,
    InternalInvariantViolation,
    InvalidDimension,
    InvalidParameter,
    TargetNotOrderD,
)
from hkcubes.groups import (
    FiniteGroup,
    abelian_invariants,
    lower_central_term,
    nilpotency_class,
    quotient_group,
)
from hkcubes.nrp import nrp_relation
from hkcubes.report import Report
from hkcubes.systems import (
    FactorMap,
    FiniteSystem,
    Relation,
    check_abelian_group_system,
    quotient_system,
)

logger = util.get_logger(__name__)


def quotient_by_nrp(
    sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> Tuple[FiniteSystem, FactorMap]:
    """``X / NRP^[d]`` and its projection."""
    sys.require_minimal(f"quotient_by_nrp[{d}]")
    quotient, pi = quotient_system(sys, nrp_relation(sys, d, budget=budget))
    quotient.name = f"{sys.name}/NRP[{d}]"
    return quotient, pi


def verify_order_of_factor(
    sys: FiniteSystem,
    d: int,
    factor: FactorMap | None = None,
    *,
    budget: int = DEFAULT_CUBE_BUDGET,
) -> Report:
    """``X / NRP^[d]`` has order at most ``d``.

    With ``factor``, a map onto a system with trivial ``NRP^[d]``, also checks
    that it factors through ``X / NRP^[d]``.
    """
    quotient, pi = quotient_by_nrp(sys, d, budget=budget)
    witnesses: List[dict] = []
    residual = nrp_relation(quotient, d, budget=budget)
    for p in residual.difference(Relation.diagonal(quotient.points))[:1]:
        witnesses.append(dict(property="quotient-order", pair=p))

    if factor is not None:
        if factor.source.points != sys.points:
            raise InvalidParameter("Factor map does not start at this system.")
        if not nrp_relation(factor.target, d, budget=budget).is_diagonal:
            raise TargetNotOrderD(
                f"`{factor.target.name}` has non-trivial NRP^[{d}]."
            )
        induced = np.full(quotient.points, -1, dtype=np.int64)
        for x in range(sys.points):
            q, y = int(pi.map[x]), int(factor.map[x])
            if induced[q] not in (-1, y):
                witnesses.append(dict(property="well-defined", point=x, class_=q))
                break
            induced[q] = y
        else:
            try:
                FactorMap(quotient, factor.target, induced)
            except HKCubesError as err:
                witnesses.append(dict(property="equivariant", reason=str(err)))

    return Report.from_witnesses(
        f"order-of-factor[{d}]",
        witnesses,
        states_visited=len(residual),
        quotient_size=quotient.points,
    )


def _moves_points(sys: FiniteSystem, members) -> bool:
    fixers = set(sys.fixers().tolist())
    return any(int(h) not in fixers for h in members)


def skipped_orders(sys: FiniteSystem, d_max: int = DEFAULT_D_MAX) -> List[int]:
    """Orders ``d <= d_max`` ruled out without computing ``NRP^[d]``.

    ``(x, h x)`` is in ``NRP^[d]`` for ``h`` in ``G_{d+1}``, so ``d`` is ruled
    out as soon as ``G_{d+1}`` moves a point.
    """
    return [
        d
        for d in range(1, d_max + 1)
        if _moves_points(sys, lower_central_term(sys.group, d + 1))
    ]


def order_of_system(
    sys: FiniteSystem, d_max: int = DEFAULT_D_MAX, *, budget: int = DEFAULT_CUBE_BUDGET
) -> int | None:
    """Smallest ``d <= d_max`` with ``NRP^[d] = Δ``, ``None`` for none.

    Orders from :func:`skipped_orders` are not searched.
    """
    sys.require_minimal("order_of_system")
    if sys.points == 1:
        return 0
    skipped = set(skipped_orders(sys, d_max))
    for d in range(1, d_max + 1):
        if d in skipped:
            logger.debug("G_%s moves points of `%s`; order exceeds %s.", d + 1, sys.name, d)
            continue
        if nrp_relation(sys, d, budget=budget).is_diagonal:
            logger.info("`%s` has order %s.", sys.name, d)
            return d
    logger.info("`%s` has order at least %s.", sys.name, d_max + 1)
    return None


class EffectiveQuotient(NamedTuple):
    group: FiniteGroup
    group_map: np.ndarray
    system: FiniteSystem
    nilpotency_class: int


def effective_nilpotent_quotient(
    sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> EffectiveQuotient:
    """``H = G / G_{d+1}`` acting on ``X`` for a system of order at most ``d``.

    Only ``G_{d+1}`` is factored out. The action is assumed faithful; a
    non-trivial kernel stays inside ``H``.
    """
    sys.require_minimal("effective_nilpotent_quotient")
    if not nrp_relation(sys, d, budget=budget).is_diagonal:
        raise InvalidParameter(f"`{sys.name}` is not of order at most {d}.")

    term = lower_central_term(sys.group, d + 1)
    if _moves_points(sys, term):
        raise InternalInvariantViolation(
            f"G_{d + 1} acts non-trivially on `{sys.name}` which has order <= {d}."
        )

    H, qmap = quotient_group(sys.group, term)
    H.name = f"{sys.group.name}/G{d + 1}"
    rows = np.zeros((H.order, sys.points), dtype=np.int64)
    for g in sys.group.elements():
        rows[qmap[g]] = sys.action[g]
    system = FiniteSystem(H, rows, labels=sys.labels, name=f"{sys.name}:effective[{d}]")

    klass = nilpotency_class(H)
    if klass is None or klass > d:
        raise InternalInvariantViolation(
            f"Effective group of `{sys.name}` has nilpotency class {klass} > {d}."
        )
    return EffectiveQuotient(H, qmap, system, klass)


class StructureGroup(NamedTuple):
    level: int
    group: FiniteGroup
    maps: np.ndarray
    properties: Dict[str, Any]


def structure_group(
    sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> StructureGroup:
    """``K_d`` acting on a system of order at most ``d``.

    Pairs of ``NRP^[d-1]`` are identified when the two lower corners form a
    cube of ``C^[d+1]``. Each class is the graph of a map ``X -> X``; the
    classes through ``(0, a)`` for ``a`` in the ``NRP^[d-1]`` class of ``0``
    are all of them. ``properties`` records every checked property.
    """
    if d < 1:
        raise InvalidDimension(f"Structure groups start at level 1, got `{d}`.")
    n = sys.points
    base = nrp_relation(sys, d - 1, budget=budget)
    lookup = cube_lookup(sys, d + 1, budget=budget)
    xs, ys = np.nonzero(base.matrix)
    half = vertex_count(d)

    maps: List[np.ndarray] = []
    functional = True
    for a in np.flatnonzero(base.matrix[0]):
        floor = np.zeros(half, dtype=np.int64)
        floor[-1] = a
        rows = np.empty((xs.size, 2 * half), dtype=np.int64)
        rows[:, :half] = floor
        rows[:, half:-1] = xs[:, None]
        rows[:, -1] = ys
        ok = lookup.contains_rows(rows)
        image = np.full(n, -1, dtype=np.int64)
        counts = np.bincount(xs[ok], minlength=n)
        image[xs[ok]] = ys[ok]
        if not (counts == 1).all():
            functional = False
            continue
        maps.append(image)

    identity = np.arange(n)
    perms = np.array(maps, dtype=np.int64).reshape(-1, n)
    bijective = bool(functional and (np.sort(perms, axis=1) == identity).all())
    index = {row.tobytes(): k for k, row in enumerate(perms)}
    table = np.zeros((len(perms), len(perms)), dtype=np.int64)
    closed = bijective
    if bijective:
        for i, p in enumerate(perms):
            for j, q in enumerate(perms):
                # (p ∘ q)(x) = p[q[x]]
                k = index.get(p[q].tobytes())
                if k is None:
                    closed = False
                    break
                table[i, j] = k
            if not closed:
                break

    group = None
    if closed:
        try:
            group = FiniteGroup(table, name=f"K{d}({sys.name})")
        except HKCubesError:
            closed = False

    free = bool(closed and all((p != identity).all() or (p == identity).all() for p in perms))
    fibres = Relation.from_labels(base.class_labels()) if base.is_equivalence() else base
    orbits = np.zeros((n, n), dtype=bool)
    for p in perms:
        orbits[identity, p] = True
    automorphisms = bool(
        closed
        and all(
            np.array_equal(p[sys.action[g]], sys.action[g][p])
            for p in perms
            for g in sys.group.generators
        )
    )
    properties = dict(
        functional=functional,
        bijective=bijective,
        group=closed,
        abelian=bool(group is not None and group.is_abelian),
        free=free,
        orbits_are_fibres=bool(closed and np.array_equal(orbits, fibres.matrix)),
        automorphisms=automorphisms,
    )
    if group is None:
        group = FiniteGroup([[0]], name=f"K{d}({sys.name}):invalid")
    return StructureGroup(d, group, perms, properties)


class TowerLevel(BaseModel):
    level: int
    size: int
    target_size: int
    K_order: int
    K_abelian: bool
    free: bool
    orbits_are_fibres: bool
    automorphisms: bool
    element_orders: List[int]


class TowerReport(BaseModel):
    system: str
    size: int
    order: int | None
    status: Literal["complete", "truncated"]
    levels: Annotated[List[TowerLevel], Field(default_factory=list)]
    abelian_factor: bool | None = None
    projections_compose: bool | None = None


def factor_tower(
    sys: FiniteSystem, d_max: int = DEFAULT_D_MAX, *, budget: int = DEFAULT_CUBE_BUDGET
) -> TowerReport:
    """``X -> X/NRP^[s-1] -> ... -> •`` with its structure groups, top first.

    Systems of order above ``d_max`` give a truncated report with no levels.
    """
    order = order_of_system(sys, d_max, budget=budget)
    if order is None:
        return TowerReport(system=sys.name, size=sys.points, order=None, status="truncated")

    quotients: Dict[int, Tuple[FiniteSystem, FactorMap]] = {
        d: quotient_by_nrp(sys, d, budget=budget) for d in range(0, order + 1)
    }
    levels: List[TowerLevel] = []
    compose = True
    for d in range(order, 0, -1):
        Y, pi = quotients[d]
        target, pi_target = quotients[d - 1]

        # Classes of NRP^[d] refine those of NRP^[d-1].
        induced = np.full(Y.points, -1, dtype=np.int64)
        induced[pi.map] = pi_target.map
        if not np.array_equal(induced[pi.map], pi_target.map):
            compose = False

        K = structure_group(Y, d, budget=budget)
        failed = [k for k, v in K.properties.items() if not v]
        if failed:
            raise InternalInvariantViolation(
                f"Structure group K_{d} of `{sys.name}` fails {failed}."
            )
        info = abelian_invariants(K.group)
        levels.append(
            TowerLevel(
                level=d,
                size=Y.points,
                target_size=target.points,
                K_order=K.group.order,
                K_abelian=bool(info["abelian"]),
                free=K.properties["free"],
                orbits_are_fibres=K.properties["orbits_are_fibres"],
                automorphisms=K.properties["automorphisms"],
                element_orders=list(info["element_orders"]),  # type: ignore[arg-type]
            )
        )
        if K.group.order * target.points != Y.points:
            raise InternalInvariantViolation(
                f"|K_{d}| * |X/NRP[{d - 1}]| != |X/NRP[{d}]| for `{sys.name}`."
            )

    abelian = None
    if order >= 1:
        abelian = check_abelian_group_system(quotients[1][0])
        if not abelian:
            raise InternalInvariantViolation(
                f"`{sys.name}`/NRP[1] is not an abelian group system."
            )

    return TowerReport(
        system=sys.name,
        size=sys.points,
        order=order,
        status="complete",
        levels=levels,
        abelian_factor=abelian,
        projections_compose=compose,
    )
