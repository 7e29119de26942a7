"""Finite dynamical systems ``(G, X)`` and relations on their points.

Every limit-based notion is read in the finite discrete setting: a sequence
converges exactly when it is eventually constant, so conditions of the form
"``x_i -> x`` and ``g_i y_i -> z``" become exact equalities with a single
witness ``g``, and orbit closures become orbits. The proximal relations below
are computed literally under that reading rather than assumed trivial.
"""

# =========================================================================== #
import functools
import itertools
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

# --------------------------------------------------------------------------- #
from hkcubes import search, util
from hkcubes.config import DEFAULT_ACTION_CHECK, DEFAULT_CUBE_BUDGET, DEFAULT_SEED
from hkcubes.errors import (
    BudgetExceeded,
    InvalidParameter,
    InvalidSystem,
    NotEquivalence,
    NotInvariant,
    NotMinimal,
)
from hkcubes.groups import FiniteGroup

logger = util.get_logger(__name__)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class UnionFind:
    """Disjoint sets over ``0 .. n - 1`` with union by rank."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True

    def labels(self) -> np.ndarray:
        """Class label of every element: the smallest member of its class."""
        n = len(self.parent)
        smallest: Dict[int, int] = {}
        for x in range(n):
            smallest.setdefault(self.find(x), x)
        return np.array([smallest[self.find(x)] for x in range(n)], dtype=np.int64)

    def __len__(self) -> int:
        return sum(1 for x in range(len(self.parent)) if self.find(x) == x)


class Relation:
    """A relation on ``0 .. n - 1`` as a boolean matrix.

    Relations produced by the package are symmetric; nothing is assumed and
    every property is checked on demand.
    """

    def __init__(self, matrix: np.ndarray):
        matrix = np.array(matrix, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidParameter("Relation matrix must be square.")
        self.matrix = _readonly(matrix)

    @classmethod
    def diagonal(cls, n: int) -> "Relation":
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def full(cls, n: int) -> "Relation":
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]], *, symmetric: bool = False) -> "Relation":
        matrix = np.zeros((n, n), dtype=bool)
        pairs = np.array(list(pairs), dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise InvalidParameter(f"Pair outside 0..{n - 1}.")
        matrix[pairs[:, 0], pairs[:, 1]] = True
        if symmetric:
            matrix[pairs[:, 1], pairs[:, 0]] = True
        return cls(matrix)

    @classmethod
    def from_labels(cls, labels: Sequence[int] | np.ndarray) -> "Relation":
        labels = np.asarray(labels)
        return cls(labels[:, None] == labels[None, :])

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Relation":
        labels = np.arange(n)
        for block in blocks:
            block = sorted(block)
            labels[block] = block[0]
        return cls.from_labels(labels)

    # ----------------------------------------------------------------------- #

    @property
    def points(self) -> int:
        return int(self.matrix.shape[0])

    def __len__(self) -> int:
        return int(self.matrix.sum())

    def __contains__(self, pair: Tuple[int, int]) -> bool:
        x, y = pair
        return bool(self.matrix[x, y])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def __le__(self, other: "Relation") -> bool:
        return bool((~self.matrix | other.matrix).all())

    def __or__(self, other: "Relation") -> "Relation":
        return Relation(self.matrix | other.matrix)

    def __repr__(self) -> str:
        return f"Relation(points={self.points}, pairs={len(self)})"

    def pairs(self) -> List[Tuple[int, int]]:
        xs, ys = np.nonzero(self.matrix)
        return list(zip(xs.tolist(), ys.tolist()))

    def difference(self, other: "Relation") -> List[Tuple[int, int]]:
        xs, ys = np.nonzero(self.matrix & ~other.matrix)
        return list(zip(xs.tolist(), ys.tolist()))

    @property
    def is_diagonal(self) -> bool:
        return self == Relation.diagonal(self.points)

    @property
    def is_full(self) -> bool:
        return bool(self.matrix.all())

    def is_reflexive(self) -> bool:
        return bool(np.diagonal(self.matrix).all())

    def is_symmetric(self) -> bool:
        return bool((self.matrix == self.matrix.T).all())

    @functools.cached_property
    def union_find(self) -> UnionFind:
        uf = UnionFind(self.points)
        for x, y in zip(*np.nonzero(np.triu(self.matrix | self.matrix.T))):
            uf.union(int(x), int(y))
        return uf

    def class_labels(self) -> np.ndarray:
        """Labels of the equivalence relation generated by this relation."""
        return self.union_find.labels()

    def generated_equivalence(self) -> "Relation":
        return Relation.from_labels(self.class_labels())

    def is_transitive(self) -> bool:
        """Reflexive symmetric relations are transitive iff they equal the
        relation induced by their own union-find classes."""
        return self == self.generated_equivalence()

    def is_equivalence(self) -> bool:
        return self.is_reflexive() and self.is_symmetric() and self.is_transitive()

    def classes(self) -> List[List[int]]:
        labels = self.class_labels()
        out: Dict[int, List[int]] = {}
        for x, label in enumerate(labels.tolist()):
            out.setdefault(label, []).append(x)
        return [out[k] for k in sorted(out)]

    def invariance_failures(self, sys: "FiniteSystem") -> Iterator[dict]:
        """Pairs ``(x, y)`` and generators ``g`` with ``(gx, gy)`` unrelated."""
        for g in sys.group.generators:
            row = sys.action[g]
            moved = self.matrix[np.ix_(row, row)]
            # moved[x, y] is whether (gx, gy) is related.
            for x, y in zip(*np.nonzero(self.matrix & ~moved)):
                yield dict(g=int(g), x=int(x), y=int(y))

    def is_invariant(self, sys: "FiniteSystem") -> bool:
        return next(self.invariance_failures(sys), None) is None

    def saturate(self, sys: "FiniteSystem") -> "Relation":
        """Smallest relation containing this one and closed under the action."""
        matrix = self.matrix.copy()
        for g in range(sys.group.order):
            row = sys.action[g]
            xs, ys = np.nonzero(self.matrix)
            matrix[row[xs], row[ys]] = True
        return Relation(matrix)

    def image(self, mapping: np.ndarray, n_target: int) -> "Relation":
        xs, ys = np.nonzero(self.matrix)
        out = np.zeros((n_target, n_target), dtype=bool)
        out[mapping[xs], mapping[ys]] = True
        return Relation(out)

    def to_json(self) -> dict:
        if self.is_equivalence():
            return dict(points=self.points, blocks=self.classes())
        return dict(points=self.points, pairs=[list(p) for p in sorted(self.pairs())])

    @classmethod
    def from_json(cls, data: dict) -> "Relation":
        if "blocks" in data:
            return cls.from_blocks(data["points"], data["blocks"])
        return cls.from_pairs(data["points"], data.get("pairs", []))


class FiniteSystem:
    """A finite group acting on ``0 .. points - 1``.

    ``action[g, x]`` is ``g x``. The action axioms are checked on
    construction: every row a permutation, the identity row trivial and
    ``(gh)x = g(hx)``, exhaustively when ``|G| * |X| <= check_limit`` and on
    random triples otherwise; ``action_exhaustive`` records which.
    """

    def __init__(
        self,
        group: FiniteGroup,
        action: Sequence[Sequence[int]] | np.ndarray,
        *,
        labels: Sequence[str] | None = None,
        name: str | None = None,
        check_limit: int = DEFAULT_ACTION_CHECK,
        seed: int = DEFAULT_SEED,
    ):
        table = np.array(action, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != group.order or not table.shape[1]:
            raise InvalidSystem(
                f"Action table must have one row per element of `{group.name}` "
                "and at least one point."
            )
        n = table.shape[1]
        arange = np.arange(n)
        if table.min() < 0 or table.max() >= n:
            raise InvalidSystem("Action table has out of range points.")

        bad_rows = np.flatnonzero((np.sort(table, axis=1) != arange).any(axis=1))
        if bad_rows.size:
            raise InvalidSystem(
                f"Element `{group.label(int(bad_rows[0]))}` does not act as a permutation.",
                triple=(int(bad_rows[0]),),
            )
        moved = np.flatnonzero(table[group.identity] != arange)
        if moved.size:
            raise InvalidSystem(
                f"Identity moves point `{int(moved[0])}`.",
                triple=(group.identity, int(moved[0])),
            )

        self.group = group
        self.action = _readonly(table)
        self.points = n
        self.name = name or f"system({group.name}, {n})"
        self.labels = (
            tuple(str(label) for label in labels)
            if labels is not None
            else tuple(str(x) for x in range(n))
        )
        if len(self.labels) != n:
            raise InvalidSystem("Expected one label per point.")

        self._check_homomorphism(check_limit, seed)

    def _check_homomorphism(self, check_limit: int, seed: int) -> None:
        G, A = self.group, self.action
        if G.order * self.points <= check_limit:
            for g in G.elements():
                # Row h of both sides is the action of g*h.
                lhs = A[G.mult[g]]
                rhs = A[g][A]
                bad = np.argwhere(lhs != rhs)
                if bad.size:
                    h, x = (int(v) for v in bad[0])
                    raise InvalidSystem(
                        f"Action is not a homomorphism at g={g}, h={h}, x={x}.",
                        triple=(g, h, x),
                    )
            self.action_exhaustive = True
            return

        rng = np.random.default_rng(seed)
        g, h = rng.integers(0, G.order, size=(2, check_limit // max(self.points, 1) or 1))
        bad = np.argwhere(A[G.mult[g, h]] != A[g][np.arange(g.size)[:, None], A[h]])
        if bad.size:
            k, x = (int(v) for v in bad[0])
            raise InvalidSystem(
                f"Action is not a homomorphism at g={g[k]}, h={h[k]}, x={x}.",
                triple=(int(g[k]), int(h[k]), x),
            )
        self.action_exhaustive = False
        logger.debug("Action axioms of `%s` spot checked.", self.name)

    # ----------------------------------------------------------------------- #

    def __repr__(self) -> str:
        return f"FiniteSystem(name={self.name!r}, group={self.group.order}, points={self.points})"

    def __hash__(self) -> int:
        return id(self)

    def act(self, g: int, x: int) -> int:
        return int(self.action[g, x])

    def orbit(self, x: int) -> List[int]:
        if not 0 <= x < self.points:
            raise InvalidParameter(f"Point `{x}` outside 0..{self.points - 1}.")
        seen = np.zeros(self.points, dtype=bool)
        seen[x] = True
        frontier = np.array([x])
        gens = np.array(self.group.generators, dtype=np.int64)
        while frontier.size and gens.size:
            images = np.unique(self.action[gens][:, frontier].ravel())
            frontier = images[~seen[images]]
            seen[frontier] = True
        return np.flatnonzero(seen).tolist()

    @functools.cached_property
    def _transport(self) -> Tuple[np.ndarray, np.ndarray]:
        """``rep[x]`` (smallest point of the orbit) and ``lift[x]`` with
        ``lift[x] * rep[x] = x``, found by BFS over generators."""
        rep = np.full(self.points, -1, dtype=np.int64)
        lift = np.full(self.points, -1, dtype=np.int64)
        gens = list(self.group.generators)
        mult = self.group.mult
        for start in range(self.points):
            if rep[start] >= 0:
                continue
            rep[start], lift[start] = start, self.group.identity
            queue = [start]
            while queue:
                nxt = []
                for x in queue:
                    for s in gens:
                        y = int(self.action[s, x])
                        if rep[y] < 0:
                            rep[y] = start
                            lift[y] = mult[s, lift[x]]
                            nxt.append(y)
                queue = nxt
        return _readonly(rep), _readonly(lift)

    @property
    def representatives(self) -> np.ndarray:
        return self._transport[0]

    @property
    def lifts(self) -> np.ndarray:
        return self._transport[1]

    @property
    def to_representative(self) -> np.ndarray:
        """Element sending each ``x`` to its orbit representative."""
        return self.group.inv[self.lifts]

    def orbit_representatives(self) -> List[int]:
        return np.unique(self.representatives).tolist()

    def orbits(self) -> List[List[int]]:
        reps = self.representatives
        return [np.flatnonzero(reps == r).tolist() for r in self.orbit_representatives()]

    @functools.cached_property
    def is_minimal(self) -> bool:
        return len(self.orbit_representatives()) == 1

    def require_minimal(self, what: str) -> None:
        if not self.is_minimal:
            raise NotMinimal(f"`{what}` needs a minimal system, `{self.name}` is not.")

    def warn_not_minimal(self, what: str) -> bool:
        if self.is_minimal:
            return False
        logger.warning(
            "`%s` is not minimal; `%s` uses the literal definition.", self.name, what
        )
        return True

    def fixers(self) -> np.ndarray:
        """``Fix(G, X)``: elements acting as the identity."""
        return np.flatnonzero((self.action == np.arange(self.points)).all(axis=1))


class FactorMap:
    """An equivariant surjection between systems of the same group."""

    def __init__(self, source: FiniteSystem, target: FiniteSystem, mapping: Sequence[int] | np.ndarray):
        mapping = np.array(mapping, dtype=np.int64)
        if mapping.shape != (source.points,):
            raise InvalidParameter("Factor map needs one image per source point.")
        if mapping.size and (mapping.min() < 0 or mapping.max() >= target.points):
            raise InvalidParameter("Factor map image outside the target.")
        if source.group.order != target.group.order or not np.array_equal(
            source.group.mult, target.group.mult
        ):
            raise InvalidParameter("Factor map systems must share their group.")
        if np.unique(mapping).size != target.points:
            raise InvalidParameter("Factor map is not surjective.")

        # map(gx) against g map(x), every g and x.
        bad = np.argwhere(mapping[source.action] != target.action[:, mapping])
        if bad.size:
            g, x = (int(v) for v in bad[0])
            raise NotInvariant(f"Factor map is not equivariant at g={g}, x={x}.")

        self.source = source
        self.target = target
        self.map = _readonly(mapping)

    @classmethod
    def identity(cls, sys: FiniteSystem) -> "FactorMap":
        return cls(sys, sys, np.arange(sys.points))

    def compose(self, after: "FactorMap") -> "FactorMap":
        """``after ∘ self``."""
        if after.source is not self.target and after.source.points != self.target.points:
            raise InvalidParameter("Factor maps do not compose.")
        return FactorMap(self.source, after.target, after.map[self.map])

    def kernel(self) -> Relation:
        return Relation.from_labels(self.map)

    def __repr__(self) -> str:
        return f"FactorMap({self.source.name!r} -> {self.target.name!r})"


# --------------------------------------------------------------------------- #


def orbit(sys: FiniteSystem, x: int) -> List[int]:
    return sys.orbit(x)


def is_minimal(sys: FiniteSystem) -> bool:
    return sys.is_minimal


def _product_codes(sys: FiniteSystem, n: int, budget: int) -> np.ndarray:
    size = sys.points**n
    if size > budget:
        raise BudgetExceeded(f"product[{n}]({sys.name})", visited=0, budget=budget, detail=f"{size} tuples.")
    return search.decode(np.arange(size), sys.points, n).astype(np.int64)


def product_system(sys: FiniteSystem, n: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> FiniteSystem:
    """Diagonal action of ``G`` on ``X^n``. Point ``k`` is the tuple with
    base ``|X|`` digits of ``k``, least significant first."""
    if n < 1:
        raise InvalidParameter(f"Product order `{n}` must be positive.")
    rows = _product_codes(sys, n, budget)
    powers = search.radix(sys.points, n)
    action = np.stack([sys.action[g][rows] @ powers for g in sys.group.elements()])
    labels = ["(" + ",".join(sys.labels[v] for v in row) + ")" for row in rows.tolist()]
    return FiniteSystem(
        sys.group,
        action,
        labels=labels,
        name=f"{sys.name}^{n}",
        check_limit=0,
    )


def diagonal_orbits(sys: FiniteSystem, n: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> List[int]:
    """Sorted orbit sizes of the diagonal action on ``X^n``."""
    rows = _product_codes(sys, n, budget)
    powers = search.radix(sys.points, n)
    uf = UnionFind(rows.shape[0])
    for g in sys.group.generators:
        images = sys.action[g][rows] @ powers
        for x, y in enumerate(images.tolist()):
            uf.union(x, y)
    labels = uf.labels()
    return sorted(np.unique(labels, return_counts=True)[1].tolist())


def is_transitive_of_all_orders(sys: FiniteSystem, n_max: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> bool:
    """Whether the diagonal action on ``X^n`` is transitive for ``n <= n_max``.

    Each order is decided by a single orbit from ``(0, ..., 0)``.
    """
    for n in range(1, n_max + 1):
        if sys.points**n > budget:
            raise BudgetExceeded(f"product[{n}]({sys.name})", budget=budget)
        start = np.zeros((1, n), dtype=np.int64)
        moves = [search.Move(sys.action[g], np.ones(n, dtype=bool)) for g in sys.group.generators]
        reached = search.closure(start, moves, sys.points, budget=budget, label=f"diagonal[{n}]")
        if reached.visited != sys.points**n:
            logger.debug("`%s` is not transitive on X^%s.", sys.name, n)
            return False
    return True


def proximal_relation(sys: FiniteSystem) -> Relation:
    """``P(X) = {(x, y) : g x = g y for some g}``."""
    matrix = np.zeros((sys.points, sys.points), dtype=bool)
    for g in sys.group.elements():
        row = sys.action[g]
        matrix |= row[:, None] == row[None, :]
    return Relation(matrix)


def q_relation(sys: FiniteSystem) -> Relation:
    """``Q(X)``: pairs with ``x' = x``, ``y' = y`` and ``g x' = g y'``.

    In a discrete space singletons are neighbourhoods, so the witnesses
    ``x', y'`` range over ``{x}`` and ``{y}``. Computed by grouping points
    by their image under each ``g``.
    """
    matrix = np.zeros((sys.points, sys.points), dtype=bool)
    for g in sys.group.elements():
        images = sys.action[g]
        order = np.argsort(images, kind="stable")
        for z, block in itertools.groupby(order.tolist(), key=lambda x: int(images[x])):
            block = list(block)
            matrix[np.ix_(block, block)] = True
    return Relation(matrix)


def q_eq_relation(sys: FiniteSystem) -> Relation:
    """Smallest invariant equivalence relation containing ``Q(X)``."""
    relation = q_relation(sys)
    while True:
        closed = relation.saturate(sys).generated_equivalence()
        if closed == relation:
            return relation
        relation = closed


def quotient_system(sys: FiniteSystem, R: Relation) -> Tuple[FiniteSystem, FactorMap]:
    """``X / R`` with classes numbered by their smallest member."""
    if R.points != sys.points:
        raise InvalidParameter("Relation and system have different point counts.")
    if not R.is_equivalence():
        raise NotEquivalence("Quotient needs an equivalence relation.")
    if (failure := next(R.invariance_failures(sys), None)) is not None:
        raise NotInvariant(f"Relation is not invariant: {failure}.")

    labels = R.class_labels()
    reps = np.unique(labels)
    index = np.searchsorted(reps, labels)
    action = index[sys.action[:, reps]]
    quotient = FiniteSystem(
        sys.group,
        action,
        labels=[sys.labels[int(r)] for r in reps],
        name=f"{sys.name}/~{reps.size}",
    )
    return quotient, FactorMap(sys, quotient, index)


def _image_permutations(sys: FiniteSystem) -> np.ndarray:
    return sys.action[list(sys.group.generators)]


def check_abelian_group_system(sys: FiniteSystem) -> bool:
    """Whether the image of ``G`` in ``Sym(X)`` is abelian and acts freely."""
    sys.require_minimal("check_abelian_group_system")
    perms = _image_permutations(sys)
    for a, b in itertools.combinations(range(len(perms)), 2):
        if not np.array_equal(perms[a][perms[b]], perms[b][perms[a]]):
            return False

    arange = np.arange(sys.points)
    fixes = (sys.action == arange).any(axis=1)
    trivial = (sys.action == arange).all(axis=1)
    return bool((~fixes | trivial).all())


def abelian_group_structure(sys: FiniteSystem, base: int = 0) -> FiniteGroup:
    """The group structure on ``X`` with ``base`` as identity.

    ``x + y`` is ``g_x y`` where ``g_x`` is any element with ``g_x base = x``.
    """
    if not check_abelian_group_system(sys):
        raise InvalidParameter(f"`{sys.name}` is not an abelian group system.")

    rep, lift = sys.representatives, sys.lifts
    if base != 0:
        # Lifts are relative to the representative 0; move them to ``base``.
        lift = sys.group.mult[lift, sys.group.inv[lift[base]]]
    table = sys.action[lift]
    assert (rep == 0).all()
    return FiniteGroup(table, labels=list(sys.labels), name=f"{sys.name}:group")
