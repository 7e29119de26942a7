"""Independent brute-force computations used to cross-check the fast paths.

Nothing here touches the packed search engine: cube sets and face groups are
plain sets of tuples closed by fixpoint iteration, and relations are read off
those sets directly.
"""

# =========================================================================== #
from typing import Dict, FrozenSet, List, Set, Tuple

# --------------------------------------------------------------------------- #
from hkcubes import util
from hkcubes.config import DEFAULT_CUBE_BUDGET
from hkcubes.cubes import enumerate_faces, vertex_count
from hkcubes.errors import BudgetExceeded, InvalidDimension
from hkcubes.groups import FiniteGroup
from hkcubes.report import Report
from hkcubes.systems import FiniteSystem, Relation

logger = util.get_logger(__name__)

Config = Tuple[int, ...]


def cubes_fixpoint(
    sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> FrozenSet[Config]:
    """``C^[d]`` as the smallest set holding every ``x^[d]`` and closed under
    ``[g]_F`` for every element ``g`` and hyperface ``F``."""
    n = vertex_count(d)
    faces = [F.vertices().tolist() for F in enumerate_faces(d, "hyperface")] if d else [[0]]
    action = sys.action.tolist()
    seen: Set[Config] = {(x,) * n for x in range(sys.points)}
    frontier = list(seen)
    while frontier:
        fresh: List[Config] = []
        for c in frontier:
            for g in range(sys.group.order):
                row = action[g]
                for face in faces:
                    image = list(c)
                    for v in face:
                        image[v] = row[c[v]]
                    key = tuple(image)
                    if key not in seen:
                        seen.add(key)
                        fresh.append(key)
        if len(seen) > budget:
            raise BudgetExceeded(f"oracle-cubes[{d}]", visited=len(seen), budget=budget)
        frontier = fresh
    return frozenset(seen)


def nrp_by_membership(
    sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> Relation:
    """Pairs whose lower corner lies in the fixpoint cube set."""
    cubes = cubes_fixpoint(sys, d + 1, budget=budget)
    top = vertex_count(d + 1) - 1
    pairs = [
        (x, y)
        for x in range(sys.points)
        for y in range(sys.points)
        if (x,) * top + (y,) in cubes
    ]
    return Relation.from_pairs(sys.points, pairs)


def canonical_by_scan(
    sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> Relation:
    """``~_d`` by grouping the cubes of ``C^[d+1]`` on their lower vertices."""
    buckets: Dict[Config, Set[int]] = {}
    for c in cubes_fixpoint(sys, d + 1, budget=budget):
        buckets.setdefault(c[:-1], set()).add(c[-1])
    pairs = [(a, b) for tops in buckets.values() for a in tops for b in tops]
    return Relation.from_pairs(sys.points, pairs)


def face_group_fixpoint(
    G: FiniteGroup, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> FrozenSet[Config]:
    """``F^[d]`` as tuples, closed under left multiplication by ``[g]_F`` for
    every element ``g`` and upper hyperface ``F``."""
    faces = [F.vertices().tolist() for F in enumerate_faces(d, "upper_hyperface")]
    mult = G.mult.tolist()
    seen: Set[Config] = {(G.identity,) * vertex_count(d)}
    frontier = list(seen)
    while frontier:
        fresh: List[Config] = []
        for t in frontier:
            for g in range(G.order):
                for face in faces:
                    image = list(t)
                    for v in face:
                        image[v] = mult[g][t[v]]
                    key = tuple(image)
                    if key not in seen:
                        seen.add(key)
                        fresh.append(key)
        if len(seen) > budget:
            raise BudgetExceeded(f"oracle-face-group[{d}]", visited=len(seen), budget=budget)
        frontier = fresh
    return frozenset(seen)


def rp_by_pairs(sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> Relation:
    """Pairs ``(f(0⃗) x, f(0⃗) y)`` for ``f`` in ``F^[d]`` with ``f x^[d]`` and
    ``f y^[d]`` equal off ``0⃗``."""
    if d < 1:
        raise InvalidDimension(f"RP needs `d >= 1`, got `{d}`.")
    action = sys.action.tolist()
    n = sys.points
    pairs: Set[Tuple[int, int]] = set()
    for f in face_group_fixpoint(sys.group, d, budget=budget):
        rows = [action[g] for g in f[1:]]
        base = action[f[0]]
        for x in range(n):
            for y in range(n):
                if all(row[x] == row[y] for row in rows):
                    pairs.add((base[x], base[y]))
    return Relation.from_pairs(n, sorted(pairs))


def diff(name: str, computed: Relation, oracle: Relation) -> Report:
    witnesses = [dict(only="computed", pair=p) for p in computed.difference(oracle)]
    witnesses += [dict(only="oracle", pair=p) for p in oracle.difference(computed)]
    return Report.from_witnesses(
        f"oracle:{name}", witnesses, states_visited=len(computed) + len(oracle)
    )


def diff_cubes(name: str, computed: FrozenSet[Config], oracle: FrozenSet[Config]) -> Report:
    witnesses = [dict(only="computed", cube=c) for c in sorted(computed - oracle)]
    witnesses += [dict(only="oracle", cube=c) for c in sorted(oracle - computed)]
    return Report.from_witnesses(
        f"oracle:{name}", witnesses, states_visited=len(computed) + len(oracle)
    )
