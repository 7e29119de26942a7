"""Finite groups stored as multiplication tables.

Elements are the integers ``0 .. order - 1``. Products are looked up in a
``numpy`` table so that the tuple-group and action code can apply whole rows
of a table at once. Subgroups are sorted member arrays tied to their parent.
"""

# =========================================================================== #
import functools
import math
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

# --------------------------------------------------------------------------- #
from hkcubes import util
from hkcubes.config import (
    ASSOCIATIVITY_EXHAUSTIVE,
    ASSOCIATIVITY_SAMPLES,
    DEFAULT_GROUP_ORDER,
)
from hkcubes.errors import InvalidElement, InvalidParameter, NotNormal

logger = util.get_logger(__name__)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class FiniteGroup:
    """A finite group given by its multiplication table.

    :param mult: ``order x order`` table, ``mult[g, h]`` is the index of
        ``g * h``.
    :param generators: Optional generating set. When omitted a small one is
        found greedily on first use.
    :param max_order: Tables above this size are rejected.
    """

    mult: np.ndarray
    identity: int
    inv: np.ndarray
    labels: Tuple[str, ...]
    name: str
    permutations: np.ndarray | None = None

    def __init__(
        self,
        mult: Sequence[Sequence[int]] | np.ndarray,
        *,
        labels: Sequence[str] | None = None,
        name: str | None = None,
        generators: Sequence[int] | None = None,
        max_order: int = DEFAULT_GROUP_ORDER,
        seed: int = 0,
    ):
        table = np.array(mult, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or not table.size:
            raise InvalidParameter("Multiplication table must be square and non-empty.")

        n = table.shape[0]
        if n > max_order:
            raise InvalidParameter(
                f"Group order `{n}` exceeds the table limit `{max_order}`."
            )
        if table.min() < 0 or table.max() >= n:
            raise InvalidElement("Multiplication table has out of range entries.")

        table = table.astype(np.int32)
        arange = np.arange(n, dtype=np.int32)

        # NOTE: Latin square rows and columns plus associativity and a two
        #       sided identity give a group.
        if not (np.sort(table, axis=1) == arange).all():
            raise InvalidParameter("Rows of the table are not permutations.")
        if not (np.sort(table, axis=0) == arange[:, None]).all():
            raise InvalidParameter("Columns of the table are not permutations.")

        identities = np.flatnonzero((table == arange).all(axis=1))
        if identities.size != 1 or not (table[:, identities[0]] == arange).all():
            raise InvalidParameter("Table has no two sided identity.")
        identity = int(identities[0])

        inv = np.argmax(table == identity, axis=1).astype(np.int32)
        if not (table[inv, arange] == identity).all():
            raise InvalidParameter("Left and right inverses disagree.")

        self.mult = _readonly(table)
        self.identity = identity
        self.inv = _readonly(inv)
        self.name = name or f"group({n})"
        self.labels = (
            tuple(str(label) for label in labels)
            if labels is not None
            else tuple(str(k) for k in range(n))
        )
        if len(self.labels) != n:
            raise InvalidParameter("Expected one label per element.")

        self._check_associative(seed)
        self._generators = (
            tuple(self.validate(g) for g in generators)
            if generators is not None
            else None
        )

    # ----------------------------------------------------------------------- #

    def _check_associative(self, seed: int) -> None:
        table, n = self.mult, self.order
        if n <= ASSOCIATIVITY_EXHAUSTIVE:
            for a in range(n):
                # (a b) c against a (b c) for every b, c.
                if not np.array_equal(table[table[a]], table[a][table]):
                    raise InvalidParameter(f"Table is not associative at `{a}`.")
            return

        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
        bad = table[table[a, b], c] != table[a, table[b, c]]
        if bad.any():
            k = int(np.flatnonzero(bad)[0])
            raise InvalidParameter(
                f"Table is not associative at `{(a[k], b[k], c[k])}`."
            )
        logger.debug(
            "Associativity of `%s` spot checked on %s triples.",
            self.name,
            ASSOCIATIVITY_SAMPLES,
        )

    @classmethod
    def from_permutations(
        cls,
        permutations: Sequence[Sequence[int]],
        *,
        name: str | None = None,
        max_order: int = DEFAULT_GROUP_ORDER,
    ) -> "FiniteGroup":
        """Close a set of permutations of ``0 .. m - 1`` under composition.

        The product ``g * h`` is the composition "first ``h`` then ``g``" so
        that a permutation group acts on the left. Element ``0`` is the
        identity and the given permutations (after deduplication) come next.
        Labels are in disjoint cycle notation on letters ``1 .. m``.
        """
        gens = np.array(permutations, dtype=np.int64)
        if gens.ndim != 2:
            raise InvalidParameter("Expected a list of permutations of equal degree.")

        m = gens.shape[1]
        if not (np.sort(gens, axis=1) == np.arange(m)).all():
            raise InvalidParameter("Generators must be permutations.")

        elements: List[Tuple[int, ...]] = [tuple(range(m))]
        index: Dict[Tuple[int, ...], int] = {elements[0]: 0}
        generator_indices = []
        for gen in gens:
            key = tuple(int(v) for v in gen)
            if key not in index:
                index[key] = len(elements)
                elements.append(key)
            generator_indices.append(index[key])

        frontier = list(elements)
        while frontier:
            fresh = []
            for perm in frontier:
                for gen in gens:
                    key = tuple(int(gen[v]) for v in perm)
                    if key in index:
                        continue
                    index[key] = len(elements)
                    elements.append(key)
                    fresh.append(key)
                    if len(elements) > max_order:
                        raise InvalidParameter(
                            f"Permutation group exceeds the table limit `{max_order}`."
                        )
            frontier = fresh

        perms = np.array(elements, dtype=np.int64)
        n = len(elements)
        table = np.empty((n, n), dtype=np.int64)
        if m**m <= np.iinfo(np.int64).max:
            powers = m ** np.arange(m, dtype=np.int64)
            codes = perms @ powers
            order = np.argsort(codes)
            sorted_codes = codes[order]
            for g in range(n):
                # Row g: compositions perms[g] after perms[h] for every h.
                composed = perms[g][perms] @ powers
                table[g] = order[np.searchsorted(sorted_codes, composed)]
        else:
            for g in range(n):
                table[g] = [index[tuple(row)] for row in perms[g][perms].tolist()]

        labels = [cycle_notation(perm) for perm in elements]
        group = cls(
            table,
            labels=labels,
            name=name,
            generators=sorted(set(generator_indices) - {0}),
            max_order=max_order,
        )
        group.permutations = _readonly(perms)
        return group

    # ----------------------------------------------------------------------- #

    @property
    def order(self) -> int:
        return int(self.mult.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(name={self.name!r}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    def validate(self, g: int) -> int:
        if isinstance(g, (bool, np.bool_)) or not isinstance(g, (int, np.integer)):
            raise InvalidElement(f"Element `{g!r}` is not an integer index.")
        if not 0 <= g < self.order:
            raise InvalidElement(
                f"Element `{g}` is out of range for `{self.name}` of order {self.order}."
            )
        return int(g)

    def validate_many(self, gs: Iterable[int]) -> List[int]:
        return [self.validate(g) for g in gs]

    def mul(self, g: int, h: int) -> int:
        return int(self.mult[g, h])

    def inverse(self, g: int) -> int:
        return int(self.inv[g])

    def label(self, g: int) -> str:
        return self.labels[g]

    def element_order(self, g: int) -> int:
        k, x = 1, self.validate(g)
        while x != self.identity:
            x = int(self.mult[g, x])
            k += 1
        return k

    @functools.cached_property
    def element_orders(self) -> np.ndarray:
        out = np.ones(self.order, dtype=np.int64)
        power = np.arange(self.order)
        arange = np.arange(self.order)
        done = power == self.identity
        k = 1
        while not done.all():
            power = self.mult[arange, power]
            k += 1
            hit = (power == self.identity) & ~done
            out[hit] = k
            done |= hit
        return _readonly(out)

    @functools.cached_property
    def is_abelian(self) -> bool:
        return bool((self.mult == self.mult.T).all())

    @property
    def generators(self) -> Tuple[int, ...]:
        if self._generators is None:
            self._generators = self._find_generators()
        return self._generators

    def _find_generators(self) -> Tuple[int, ...]:
        # NOTE: Greedy in order of decreasing element order, which tends to
        #       find short generating sets for the zoo groups.
        candidates = sorted(
            self.elements(), key=lambda g: (-int(self.element_orders[g]), g)
        )
        gens: List[int] = []
        span = np.zeros(self.order, dtype=bool)
        span[self.identity] = True
        for g in candidates:
            if span.all():
                break
            if span[g]:
                continue
            gens.append(int(g))
            span = _closure_mask(self, gens)

        return tuple(gens)

    # ----------------------------------------------------------------------- #

    def permutation(self, g: int) -> Tuple[int, ...] | None:
        if self.permutations is None:
            return None
        return tuple(int(v) for v in self.permutations[g])

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.order == other.order and np.array_equal(self.mult, other.mult)

    def __hash__(self) -> int:
        return id(self)


def cycle_notation(perm: Sequence[int]) -> str:
    """Disjoint cycle notation on letters ``1 .. m``, ``()`` for identity."""
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle, x = [], start
        while x not in seen:
            seen.add(x)
            cycle.append(str(x + 1))
            x = perm[x]
        out.append("(" + " ".join(cycle) + ")")
    return "".join(out) or "()"


def _closure_mask(group: FiniteGroup, gens: Iterable[int]) -> np.ndarray:
    gens = np.fromiter(gens, dtype=np.int64)
    mask = np.zeros(group.order, dtype=bool)
    mask[group.identity] = True
    frontier = np.array([group.identity])
    while frontier.size and gens.size:
        images = group.mult[frontier][:, gens].ravel()
        images = np.unique(images[~mask[images]])
        mask[images] = True
        frontier = images
    return mask


class Subgroup:
    """A subgroup as a sorted array of members of its parent group."""

    __slots__ = ("parent", "members", "generators", "_mask")

    def __init__(
        self,
        parent: FiniteGroup,
        members: Iterable[int] | np.ndarray,
        generators: Sequence[int] = (),
    ):
        self.parent = parent
        self.members = _readonly(np.unique(np.asarray(list(members), dtype=np.int64)))
        self.generators = tuple(int(g) for g in generators)
        mask = np.zeros(parent.order, dtype=bool)
        mask[self.members] = True
        self._mask = _readonly(mask)

    @property
    def order(self) -> int:
        return int(self.members.size)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g: int) -> bool:
        return 0 <= g < self.parent.order and bool(self._mask[g])

    def __iter__(self):
        return (int(g) for g in self.members)

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and np.array_equal(
            self.members, other.members
        )

    def __hash__(self) -> int:
        return hash(self.members.tobytes())

    def __le__(self, other: "Subgroup") -> bool:
        return bool(np.isin(self.members, other.members).all())

    def is_trivial(self) -> bool:
        return self.order == 1

    def __repr__(self) -> str:
        return f"Subgroup(parent={self.parent.name!r}, order={self.order})"


def generate_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``.

    Closes ``{identity}`` under right multiplication by the generators; in a
    finite group that set is already closed under inverses.
    """
    gens = G.validate_many(gens)
    mask = _closure_mask(G, gens)
    return Subgroup(G, np.flatnonzero(mask), gens)


def commutator(G: FiniteGroup, g: int, h: int) -> int:
    """``g h g^-1 h^-1``."""
    g, h = G.validate(g), G.validate(h)
    return int(G.mult[G.mult[G.mult[g, h], G.inv[g]], G.inv[h]])


def commutators(G: FiniteGroup, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Distinct commutators ``[a, b]`` with ``a`` in ``left``, ``b`` in ``right``."""
    left = np.asarray(left)[:, None]
    right = np.asarray(right)[None, :]
    prod = G.mult[G.mult[G.mult[left, right], G.inv[left]], G.inv[right]]
    return np.unique(prod)


def commutator_subgroup(G: FiniteGroup, A: Subgroup | None = None) -> Subgroup:
    """``[G, A]``, with ``A = G`` by default."""
    members = np.arange(G.order) if A is None else A.members
    return generate_subgroup(G, commutators(G, np.arange(G.order), members).tolist())


def lower_central_series(G: FiniteGroup) -> List[Subgroup]:
    """``[G_1, G_2, ..., G_k]`` with ``G_{i+1} = [G, G_i]``.

    Stops at the first term that repeats; the stable term appears once.
    """
    series = [Subgroup(G, np.arange(G.order), G.generators)]
    while True:
        nxt = commutator_subgroup(G, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)

    logger.debug(
        "Lower central series of `%s`: %s.", G.name, [s.order for s in series]
    )
    return series


def lower_central_term(G: FiniteGroup, i: int) -> Subgroup:
    """``G_i`` for any ``i >= 0`` where ``G_0 = G_1 = G``."""
    if i < 0:
        raise InvalidParameter(f"Series index `{i}` must be non-negative.")
    series = lower_central_series(G)
    return series[min(max(i, 1), len(series)) - 1]


def nilpotency_class(G: FiniteGroup) -> int | None:
    """Nilpotency class, ``0`` for the trivial group, ``None`` if not nilpotent."""
    series = lower_central_series(G)
    if not series[-1].is_trivial():
        return None
    return len(series) - 1


def is_perfect(G: FiniteGroup) -> bool:
    return commutator_subgroup(G).order == G.order


def is_normal(G: FiniteGroup, N: Subgroup) -> bool:
    """Exhaustive conjugation check ``g n g^-1`` for every ``g``."""
    conj = G.mult[G.mult[np.arange(G.order)[:, None], N.members[None, :]], G.inv[:, None]]
    return bool(N.mask[conj].all())


def quotient_group(G: FiniteGroup, N: Subgroup) -> Tuple[FiniteGroup, np.ndarray]:
    """Coset group ``G / N`` and the surjection as an index array.

    Cosets are numbered by their smallest member in increasing order.
    """
    if N.parent is not G and N.parent != G:
        raise InvalidParameter("Subgroup does not belong to this group.")
    if not is_normal(G, N):
        raise NotNormal(f"Subgroup of order {N.order} is not normal in `{G.name}`.")

    # gN as a row of members; the smallest entry labels the coset.
    cosets = G.mult[np.arange(G.order)[:, None], N.members[None, :]]
    reps = cosets.min(axis=1)
    unique_reps = np.unique(reps)
    qmap = np.searchsorted(unique_reps, reps)

    table = qmap[G.mult[unique_reps[:, None], unique_reps[None, :]]]
    labels = [G.label(int(r)) if N.order == 1 else f"{G.label(int(r))}N" for r in unique_reps]
    generators = sorted({int(qmap[g]) for g in G.generators} - {int(qmap[G.identity])})
    quotient = FiniteGroup(
        table,
        labels=labels,
        name=f"{G.name}/N{N.order}",
        generators=generators,
        max_order=max(G.order, 1),
    )
    return quotient, _readonly(qmap.astype(np.int64))


def abelianization(G: FiniteGroup) -> Tuple[FiniteGroup, np.ndarray]:
    quotient, qmap = quotient_group(G, commutator_subgroup(G))
    quotient.name = f"{G.name}^ab"
    return quotient, qmap


def abelian_invariants(G: FiniteGroup) -> Dict[str, object]:
    """Isomorphism data used in reports: order, commutativity, element orders.

    For abelian groups the multiset of element orders determines the group.
    """
    orders = sorted(int(k) for k in G.element_orders)
    exponent = math.lcm(*orders) if orders else 1
    return dict(
        order=G.order,
        abelian=G.is_abelian,
        exponent=exponent,
        element_orders=orders,
    )
