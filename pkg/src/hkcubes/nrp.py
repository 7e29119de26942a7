"""Nilpotent regionally proximal relations and the checks built on them.

``(x, y)`` is in ``NRP^[d]`` when the lower corner ``⌞^[d+1](x, y)`` is a
cube. Membership is decided against the slice of ``C^[d+1]`` at the orbit
representative of ``x``: moving the corner by the element ``t`` with
``t x = r`` gives ``⌞(r, t y)``, so one slice answers for a whole orbit.
"""

# =========================================================================== #
from typing import Dict, List

import numpy as np

# --------------------------------------------------------------------------- #
from hkcubes import search, util
from hkcubes.config import DEFAULT_CUBE_BUDGET, DEFAULT_PAIR_BUDGET
from hkcubes.cubespace import cube_lookup, cube_moves, y_space
from hkcubes.cubes import vertex_count
from hkcubes.errors import BudgetExceeded, InvalidDimension, NotApplicable
from hkcubes.groups import lower_central_term
from hkcubes.report import Report
from hkcubes.systems import (
    FactorMap,
    FiniteSystem,
    Relation,
    is_transitive_of_all_orders,
    proximal_relation,
    q_eq_relation,
    q_relation,
)

logger = util.get_logger(__name__)


def _corner_codes(n: int, base: int, d: int, kind: str) -> np.ndarray:
    """Codes of ``⌞^[d](base, z)`` (``lower``) or ``⌜^[d](base, z)`` for every z."""
    width = vertex_count(d)
    z = np.arange(n, dtype=np.int64)
    powers = search.radix(n, width, label=f"corner[{d}]")
    if kind == "lower":
        return base * powers[:-1].sum() + z * powers[-1]
    return base * powers[0] + z * powers[1:].sum()


def _corner_relation(
    sys: FiniteSystem, d: int, kind: str, *, budget: int
) -> Relation:
    if d < 0:
        raise InvalidDimension(f"Order `{d}` must be non-negative.")
    n = sys.points
    related: Dict[int, np.ndarray] = {}
    completed: List[int] = []
    for r in sys.orbit_representatives():
        try:
            slice_ = y_space(sys, d + 1, r, budget=budget)
        except BudgetExceeded as err:
            raise BudgetExceeded(
                f"{kind}-corner[{d}]({sys.name}) at base point {r}",
                visited=err.visited,
                frontier=err.frontier,
                budget=err.budget,
                detail=f"Completed base points: {completed}.",
            ) from err
        related[r] = search.contains(slice_.codes, _corner_codes(n, r, d + 1, kind))
        completed.append(r)

    matrix = np.zeros((n, n), dtype=bool)
    reps, lifts = sys.representatives, sys.lifts
    for x in range(n):
        # y is related to x iff t y is related to r, with t = lift[x]^-1.
        matrix[x] = related[int(reps[x])][sys.action[sys.group.inv[lifts[x]]]]
    return Relation(matrix)


def nrp_relation(sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> Relation:
    """``NRP^[d](X)``.

    Non-minimal systems get the literal corner membership relation and a
    warning; no equivalence is claimed for them.
    """
    sys.warn_not_minimal(f"nrp_relation[{d}]")
    relation = _corner_relation(sys, d, "lower", budget=budget)
    logger.info(
        "NRP^[%s](%s) has %s pairs in %s classes.",
        d,
        sys.name,
        len(relation),
        len(relation.classes()),
    )
    return relation


def upper_corner_relation(
    sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> Relation:
    """Pairs whose upper corner ``⌜^[d+1](x, y)`` is a cube."""
    return _corner_relation(sys, d, "upper", budget=budget)


def verify_equivalence(R: Relation, sys: FiniteSystem) -> Report:
    """Reflexive, symmetric, transitive and invariant under the generators."""

    def witnesses():
        if not R.is_reflexive():
            x = int(np.flatnonzero(~np.diagonal(R.matrix))[0])
            yield dict(property="reflexive", pair=[x, x])
        if not R.is_symmetric():
            x, y = np.argwhere(R.matrix != R.matrix.T)[0]
            yield dict(property="symmetric", pair=[x, y])
        missing = R.generated_equivalence().difference(R)
        if missing:
            yield dict(property="transitive", pair=list(missing[0]), missing=len(missing))
        for failure in R.invariance_failures(sys):
            yield dict(property="invariant", **failure)
            break

    return Report.from_witnesses(
        "equivalence", witnesses(), states_visited=len(R), classes=len(R.classes())
    )


def verify_alt_corner(sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> Report:
    """Lower and upper corner relations coincide."""
    lower = nrp_relation(sys, d, budget=budget)
    upper = upper_corner_relation(sys, d, budget=budget)
    witnesses = [dict(only="lower", pair=p) for p in lower.difference(upper)]
    witnesses += [dict(only="upper", pair=p) for p in upper.difference(lower)]
    return Report.from_witnesses(
        f"alt-corner[{d}]", witnesses, states_visited=len(lower) + len(upper)
    )


def canonical_relation(
    sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> Relation:
    """``~_d``: top values of two cubes of ``C^[d+1]`` agreeing off ``1⃗``.

    Cubes are bucketed on their lower vertices within each representative's
    slice and the result is moved around by the action.
    """
    n = sys.points
    n_top = n ** (vertex_count(d + 1) - 1)
    matrix = np.zeros((n, n), dtype=bool)
    lookup = cube_lookup(sys, d + 1, budget=budget)
    for s in lookup.slices.values():
        lower, top = s.codes % n_top, s.codes // n_top
        order = np.argsort(lower, kind="stable")
        lower, top = lower[order], top[order]
        starts = np.flatnonzero(np.concatenate([[True], lower[1:] != lower[:-1]]))
        ends = np.concatenate([starts[1:], [lower.size]])
        matrix[top, top] = True
        for lo, hi in zip(starts[ends - starts > 1], ends[ends - starts > 1]):
            block = top[lo:hi]
            matrix[np.ix_(block, block)] = True
    return Relation(matrix).saturate(sys)


def check_canonical(sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> Report:
    canonical = canonical_relation(sys, d, budget=budget)
    nrp = nrp_relation(sys, d, budget=budget)
    witnesses = [dict(only="canonical", pair=p) for p in canonical.difference(nrp)]
    witnesses += [dict(only="nrp", pair=p) for p in nrp.difference(canonical)]
    return Report.from_witnesses(
        f"canonical[{d}]", witnesses, states_visited=len(canonical) + len(nrp)
    )


def rp_relation(sys: FiniteSystem, d: int, *, budget: int = DEFAULT_PAIR_BUDGET) -> Relation:
    """``RP^[d](X)`` by search over pairs ``(f x^[d], f y^[d])``.

    A face group element fixes vertex ``0⃗``, so the orbit of the pair of
    constants ``(x^[d], y^[d])`` keeps ``x`` and ``y`` there. ``(x, y)`` is
    related when some pair in that orbit agrees off ``0⃗``. Orbits from
    different starts never meet, so one search covers every start.
    """
    if d < 1:
        raise InvalidDimension(f"RP needs `d >= 1`, got `{d}`.")
    n, width = sys.points, vertex_count(d)
    moves = [
        search.Move(m.perm, np.concatenate([m.mask, m.mask]), m.label)
        for m in cube_moves(sys, d, "face")
    ]
    reps = sys.orbit_representatives()
    starts = np.array(
        [[r] * width + [y] * width for r in reps for y in range(n)], dtype=np.int64
    )
    closure = search.closure(
        starts, moves, n, budget=budget, label=f"rp[{d}]({sys.name})"
    )
    rows = search.decode(closure.codes, n, 2 * width)
    match = (rows[:, 1:width] == rows[:, width + 1 :]).all(axis=1)
    pairs = rows[match][:, [0, width]].astype(np.int64)
    relation = Relation.from_pairs(n, pairs).saturate(sys)
    logger.info("RP^[%s](%s) has %s pairs.", d, sys.name, len(relation))
    return relation


def check_rp_subset_nrp(
    sys: FiniteSystem,
    d: int,
    *,
    budget: int = DEFAULT_CUBE_BUDGET,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> Report:
    rp = rp_relation(sys, d, budget=pair_budget)
    nrp = nrp_relation(sys, d, budget=budget)
    return Report.from_witnesses(
        f"rp-subset-nrp[{d}]",
        rp.difference(nrp),
        states_visited=len(rp),
        rp_pairs=len(rp),
        nrp_pairs=len(nrp),
        strict=not rp == nrp,
    )


def q_relations_chain(sys: FiniteSystem, *, budget: int = DEFAULT_CUBE_BUDGET) -> Report:
    """``P ⊆ Q ⊆ Q_eq ⊆ NRP^[1]``."""
    chain = [
        ("P", proximal_relation(sys)),
        ("Q", q_relation(sys)),
        ("Q_eq", q_eq_relation(sys)),
        ("NRP[1]", nrp_relation(sys, 1, budget=budget)),
    ]
    witnesses = [
        dict(inclusion=f"{a}<={b}", pair=p)
        for (a, small), (b, big) in zip(chain, chain[1:])
        for p in small.difference(big)[:1]
    ]
    return Report.from_witnesses(
        "q-chain",
        witnesses,
        states_visited=sum(len(r) for _, r in chain),
        sizes={name: len(r) for name, r in chain},
    )


def elementary_chain_check(
    sys: FiniteSystem,
    d_max: int,
    *,
    budget: int = DEFAULT_CUBE_BUDGET,
    rp: bool = False,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> Report:
    """Inclusions between ``P``, ``Q`` and the ``NRP^[d]``, plus ``(x, hx)``
    in ``NRP^[d]`` for ``h`` in ``G_{d+1}``.

    With ``rp`` the chain ``P ⊆ RP^[d+1] ⊆ RP^[d]`` is checked as well.
    """
    if d_max < 1:
        raise InvalidDimension("The chain needs `d_max >= 1`.")
    P = proximal_relation(sys)
    nrps = {d: nrp_relation(sys, d, budget=budget) for d in range(1, d_max + 1)}
    witnesses: List[dict] = []

    for p in q_relations_chain(sys, budget=budget).witnesses:
        witnesses.append(p)
    for p in P.difference(nrps[d_max])[:1]:
        witnesses.append(dict(inclusion=f"P<=NRP[{d_max}]", pair=p))
    for d in range(1, d_max):
        for p in nrps[d + 1].difference(nrps[d])[:1]:
            witnesses.append(dict(inclusion=f"NRP[{d + 1}]<=NRP[{d}]", pair=p))

    for d, R in nrps.items():
        term = lower_central_term(sys.group, d + 1)
        for h in term:
            moved = sys.action[h]
            bad = np.flatnonzero(~R.matrix[np.arange(sys.points), moved])
            if bad.size:
                witnesses.append(dict(commutator_term=d + 1, h=h, x=int(bad[0])))
                break

    if rp:
        rps = {d: rp_relation(sys, d, budget=pair_budget) for d in range(1, d_max + 1)}
        for p in P.difference(rps[d_max])[:1]:
            witnesses.append(dict(inclusion=f"P<=RP[{d_max}]", pair=p))
        for d in range(1, d_max):
            for p in rps[d + 1].difference(rps[d])[:1]:
                witnesses.append(dict(inclusion=f"RP[{d + 1}]<=RP[{d}]", pair=p))

    return Report.from_witnesses(
        f"elementary-chain[{d_max}]",
        witnesses,
        states_visited=sum(len(R) for R in nrps.values()),
        nrp_classes={d: len(R.classes()) for d, R in nrps.items()},
    )


def verify_lifting(pi: FactorMap, d: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> Report:
    """``(π x π)(NRP^[d](X)) = NRP^[d](Y)``."""
    source = nrp_relation(pi.source, d, budget=budget)
    target = nrp_relation(pi.target, d, budget=budget)
    image = source.image(pi.map, pi.target.points)
    witnesses = [dict(only="image", pair=p) for p in image.difference(target)]
    witnesses += [dict(only="target", pair=p) for p in target.difference(image)]
    return Report.from_witnesses(
        f"lifting[{d}]",
        witnesses,
        states_visited=len(source) + len(target),
        source=pi.source.name,
        target=pi.target.name,
    )


def weakly_mixing_checks(
    sys: FiniteSystem, d_max: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> Report:
    """For systems transitive of all orders: ``Y_x = {x} x X^(2^d - 1)``,
    ``C_x = Y_x`` and ``NRP^[d] = X x X``.

    Raises ``NotApplicable`` when the diagonal action on some ``X^n`` with
    ``n <= 2^d_max`` is not transitive.
    """
    if not is_transitive_of_all_orders(sys, vertex_count(d_max), budget=budget):
        raise NotApplicable(f"`{sys.name}` is not transitive of all orders.")

    n = sys.points
    witnesses: List[dict] = []
    for d in range(1, d_max + 1):
        expected = n ** (vertex_count(d) - 1)
        for x in range(n):
            size = y_space(sys, d, x, budget=budget).size
            if size != expected:
                witnesses.append(dict(d=d, x=x, y_size=size, expected=expected))
        lookup = cube_lookup(sys, d, budget=budget)
        if lookup.size != n * expected:
            witnesses.append(dict(d=d, c_size=lookup.size, expected=n * expected))
        if not nrp_relation(sys, d, budget=budget).is_full:
            witnesses.append(dict(d=d, nrp="not full"))
    return Report.from_witnesses(f"weakly-mixing[{d_max}]", witnesses)


def distal_from_order(sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> Report:
    """``NRP^[d] = Δ`` forces ``P = Δ``."""
    if not nrp_relation(sys, d, budget=budget).is_diagonal:
        return Report.not_applicable(f"distal[{d}]", f"NRP^[{d}] is not trivial")
    P = proximal_relation(sys)
    return Report.from_witnesses(
        f"distal[{d}]", P.difference(Relation.diagonal(sys.points)), states_visited=len(P)
    )
