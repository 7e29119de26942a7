"""Dynamical cubespaces ``C^[d](X)`` and the nilspace axiom checks.

``C^[d]`` is the union of the ``HK^[d]`` orbits of the constant
configurations ``x^[d]``. Any element of ``HK^[d]`` factors as ``f t^[d]``
with ``f`` in the face group, and ``f`` fixes vertex ``0⃗``, so the cubes with
``c(0⃗) = x`` are exactly the face group orbit of ``x^[d]``. Per base point
work therefore runs on one slice per orbit representative and moves the
other base points there with a group element; the full set is only built
when a check needs it.
"""

# =========================================================================== #
import json
import threading
import weakref
from typing import Dict, Iterable, List, Literal, Sequence, Tuple, overload

import numpy as np

# --------------------------------------------------------------------------- #
from hkcubes import search, util
from hkcubes.config import (
    DEFAULT_CORNERS_EXHAUSTIVE,
    DEFAULT_CUBE_BUDGET,
    DEFAULT_SAMPLE,
    DEFAULT_SEED,
)
from hkcubes.cube_groups import upper_hyperfaces
from hkcubes.cubes import (
    Configuration,
    Face,
    enumerate_morphisms,
    popcount,
    subcube_below,
    vertex_count,
)
from hkcubes.errors import (
    BudgetExceeded,
    InvalidDimension,
    InvalidIndex,
    InvalidParameter,
    InvalidVertexSet,
)
from hkcubes.report import Report
from hkcubes.systems import FiniteSystem

logger = util.get_logger(__name__)

MoveSet = Literal["hk", "face"]
Provenance = Literal["orbit", "union", "slice", "y-space", "jsonl"]


class CubeSet:
    """A set of ``d`` dimensional configurations of a system.

    Stored as sorted packed codes, vertex ``0⃗`` in the least significant
    digit.
    """

    def __init__(
        self,
        system: FiniteSystem,
        d: int,
        codes: np.ndarray,
        *,
        provenance: Provenance = "orbit",
        levels: int = 0,
    ):
        self.system = system
        self.d = d
        self.codes = codes
        self.provenance = provenance
        self.levels = levels

    @property
    def size(self) -> int:
        return int(self.codes.size)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return (
            f"CubeSet(system={self.system.name!r}, d={self.d}, "
            f"size={self.size}, provenance={self.provenance!r})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, CubeSet):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash((self.d, self.codes.tobytes()))

    def encode(self, rows: np.ndarray) -> np.ndarray:
        return search.encode(rows, self.system.points, label=f"cubes[{self.d}]")

    def rows(self) -> np.ndarray:
        return search.decode(self.codes, self.system.points, vertex_count(self.d))

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        return search.contains(self.codes, self.encode(rows))

    def __contains__(self, c: Configuration) -> bool:
        if c.d != self.d or max(c.vals) >= self.system.points:
            return False
        return bool(self.contains_rows(c.array()[None, :])[0])

    def configurations(self) -> List[Configuration]:
        return [Configuration(d=self.d, vals=tuple(row)) for row in self.rows().tolist()]

    def is_subset(self, other: "CubeSet") -> bool:
        return bool(search.contains(other.codes, self.codes).all())

    def to_jsonl(self) -> str:
        """One JSON array per configuration, lexicographically sorted."""
        rows = self.rows().astype(np.int64)
        if rows.size:
            rows = rows[np.lexsort(rows.T[::-1])]
        return "\n".join(json.dumps(row) for row in rows.tolist())

    @classmethod
    def from_jsonl(cls, system: FiniteSystem, text: str) -> "CubeSet":
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        if not rows:
            raise InvalidParameter("No configurations to read.")
        d = len(rows[0]).bit_length() - 1
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != vertex_count(d):
            raise InvalidParameter("Configurations must share a power of two length.")
        codes = np.unique(search.encode(arr, system.points))
        codes.setflags(write=False)
        return cls(system, d, codes, provenance="jsonl")


def cube_moves(sys: FiniteSystem, d: int, which: MoveSet = "hk") -> List[search.Move]:
    """Vertexwise action of ``[g]_F`` for generators ``g``.

    ``hk`` uses upper hyperfaces and the full cube, ``face`` the upper
    hyperfaces only.
    """
    if d < 0:
        raise InvalidDimension(f"Dimension `{d}` must be non-negative.")
    faces: List[Face] = upper_hyperfaces(d)
    if which == "hk":
        faces = faces + [Face.full(d)]
    return [
        search.Move(sys.action[g], F.mask(), f"[{sys.group.label(g)}]_{F}")
        for F in faces
        for g in sys.group.generators
    ]


def _constants(points: Iterable[int], d: int) -> np.ndarray:
    points = np.asarray(list(points), dtype=np.int64)
    return np.repeat(points[:, None], vertex_count(d), axis=1)


def dynamical_cubes(
    sys: FiniteSystem,
    d: int,
    *,
    budget: int = DEFAULT_CUBE_BUDGET,
    union: bool = False,
) -> CubeSet:
    """``C^[d](X)`` by breadth first search over ``HK^[d]`` generators.

    By default the search starts from one constant configuration per orbit,
    which for a minimal system is the single orbit ``HK^[d] 0^[d]``. With
    ``union`` it starts from every constant configuration.
    """
    if d < 0:
        raise InvalidDimension(f"Dimension `{d}` must be non-negative.")
    starts = range(sys.points) if union else sys.orbit_representatives()
    closure = search.closure(
        _constants(starts, d),
        cube_moves(sys, d, "hk"),
        sys.points,
        budget=budget,
        label=f"cubes[{d}]({sys.name})",
    )
    return CubeSet(
        sys,
        d,
        closure.codes,
        provenance="union" if union else "orbit",
        levels=closure.levels,
    )


@overload
def cubes_at(C: CubeSet, x: int) -> CubeSet: ...


@overload
def cubes_at(C: FiniteSystem, d: int, x: int, *, budget: int = ...) -> CubeSet: ...


def cubes_at(C, *args, budget: int = DEFAULT_CUBE_BUDGET):
    """``C_x^[d]``: the cubes whose vertex ``0⃗`` is ``x``.

    Either ``cubes_at(C, x)`` on a computed cube set or
    ``cubes_at(sys, d, x)``, which computes ``C^[d]`` first.
    """
    if isinstance(C, FiniteSystem):
        d, x = args
        C = dynamical_cubes(C, d, budget=budget)
    else:
        (x,) = args
    if not 0 <= x < C.system.points:
        raise InvalidIndex(f"Point `{x}` outside 0..{C.system.points - 1}.")
    codes = C.codes[C.codes % C.system.points == x]
    codes.setflags(write=False)
    return CubeSet(C.system, C.d, codes, provenance="slice")


_SLICES: "weakref.WeakKeyDictionary[FiniteSystem, Dict[Tuple[int, int], CubeSet]]"
_SLICES = weakref.WeakKeyDictionary()
_SLICES_LOCK = threading.Lock()


def y_space(
    sys: FiniteSystem, d: int, x: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> CubeSet:
    """``Y_x^[d]``, the face group orbit of ``x^[d]``. Cached per system."""
    if not 0 <= x < sys.points:
        raise InvalidParameter(f"Point `{x}` outside 0..{sys.points - 1}.")
    key = (d, x)
    with _SLICES_LOCK:
        cached = _SLICES.get(sys, {}).get(key)
    if cached is not None:
        return cached

    closure = search.closure(
        _constants([x], d),
        cube_moves(sys, d, "face"),
        sys.points,
        budget=budget,
        label=f"y[{d}]({sys.name}, x={x})",
    )
    out = CubeSet(sys, d, closure.codes, provenance="y-space", levels=closure.levels)
    with _SLICES_LOCK:
        _SLICES.setdefault(sys, {})[key] = out
    return out


class CubeLookup:
    """Membership in ``C^[d]`` without materializing it.

    A configuration is moved by the diagonal action until vertex ``0⃗`` is
    its orbit representative and then looked up in that representative's
    slice.
    """

    def __init__(self, sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET):
        self.system = sys
        self.d = d
        self.slices = {
            r: y_space(sys, d, r, budget=budget) for r in sys.orbit_representatives()
        }
        codes = np.concatenate([s.codes for s in self.slices.values()])
        codes.sort()
        codes.setflags(write=False)
        self.codes = codes

    @property
    def size(self) -> int:
        """``|C^[d]|``."""
        reps = self.system.representatives
        return sum(int((reps == r).sum()) * s.size for r, s in self.slices.items())

    @property
    def states_visited(self) -> int:
        return int(self.codes.size)

    def normalize(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        if not rows.size:
            return rows
        t = self.system.to_representative[rows[:, 0]]
        return self.system.action[t[:, None], rows]

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows, dtype=np.int64))
        if not rows.size:
            return np.zeros(rows.shape[0], dtype=bool)
        normal = self.normalize(rows)
        return search.contains(self.codes, search.encode(normal, self.system.points))

    def __contains__(self, c: Configuration) -> bool:
        if c.d != self.d or max(c.vals) >= self.system.points:
            return False
        return bool(self.contains_rows(c.array()[None, :])[0])

    def slice_rows(self, x: int) -> np.ndarray:
        """Rows of ``C_x^[d]``."""
        r = int(self.system.representatives[x])
        rows = self.slices[r].rows().astype(np.int64)
        return self.system.action[self.system.lifts[x]][rows]


_LOOKUPS: "weakref.WeakKeyDictionary[FiniteSystem, Dict[int, CubeLookup]]"
_LOOKUPS = weakref.WeakKeyDictionary()


def cube_lookup(
    sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET
) -> CubeLookup:
    with _SLICES_LOCK:
        cached = _LOOKUPS.get(sys, {}).get(d)
    if cached is not None:
        return cached
    lookup = CubeLookup(sys, d, budget=budget)
    with _SLICES_LOCK:
        _LOOKUPS.setdefault(sys, {})[d] = lookup
    return lookup


# --------------------------------------------------------------------------- #


def _sample_rows(
    rows: np.ndarray, sample: int | None, seed: int
) -> Tuple[np.ndarray, bool]:
    if sample is None or rows.shape[0] <= sample:
        return rows, True
    rng = np.random.default_rng(seed)
    return rows[rng.choice(rows.shape[0], size=sample, replace=False)], False


def check_cube_invariance(
    C: CubeSet,
    r_max: int,
    *,
    sample: int | None = DEFAULT_SAMPLE,
    seed: int = DEFAULT_SEED,
    budget: int = DEFAULT_CUBE_BUDGET,
) -> Report:
    """``c ∘ f`` is an ``r`` cube for every morphism ``f: {0,1}^r -> {0,1}^d``.

    Every cube is checked when ``C`` has at most ``sample`` elements,
    otherwise a random subset of that size.
    """
    sys = C.system
    rows, exhaustive = _sample_rows(C.rows().astype(np.int64), sample, seed)

    def witnesses():
        for r in range(r_max + 1):
            lookup = cube_lookup(sys, r, budget=budget)
            for f in enumerate_morphisms(r, C.d):
                ok = lookup.contains_rows(rows[:, f.table()])
                for k in np.flatnonzero(~ok)[:1]:
                    yield dict(morphism=list(f.coords), cube=rows[k])

    return Report.from_witnesses(
        f"cube-invariance[{C.d}]",
        witnesses(),
        exhaustive=exhaustive,
        states_visited=int(rows.shape[0]),
        r_max=r_max,
    )


def _lower_faces(d: int) -> List[np.ndarray]:
    """Vertex lists of the faces ``{ω_i = 0}``, each in increasing order."""
    return [Face.hyperface(d, i, 0).vertices() for i in range(1, d + 1)]


def check_completion(
    sys: FiniteSystem,
    d: int,
    *,
    limit: int = DEFAULT_CORNERS_EXHAUSTIVE,
    sample: int = DEFAULT_SAMPLE,
    seed: int = DEFAULT_SEED,
    budget: int = DEFAULT_CUBE_BUDGET,
) -> Report:
    """``d``-completion: every ``d``-corner extends to a cube.

    A corner is a map on ``{0,1}^d`` minus ``1⃗`` whose restriction to every
    lower hyperface is a ``d - 1`` cube. Corners are enumerated with vertex
    ``0⃗`` fixed to an orbit representative when that space has at most
    ``limit`` candidates; otherwise punctured cubes are sampled and the report
    is marked non-exhaustive.
    """
    if d < 1:
        raise InvalidDimension(f"Completion needs `d >= 1`, got `{d}`.")
    n = sys.points
    width = vertex_count(d) - 1
    reps = sys.orbit_representatives()
    target = cube_lookup(sys, d, budget=budget)
    free = width - 1
    candidates = len(reps) * n**free
    n_top = n**width
    completions = np.unique(target.codes % n_top)

    if candidates > limit:
        rng = np.random.default_rng(seed)
        picks = target.codes[rng.integers(0, target.codes.size, size=sample)]
        corners = picks % n_top
        ok = search.contains(completions, corners)
        return Report.from_witnesses(
            f"completion[{d}]",
            (search.decode(corners[k : k + 1], n, width)[0] for k in np.flatnonzero(~ok)),
            exhaustive=False,
            states_visited=sample,
            candidates=candidates,
            mode="punctured-cube-sample",
        )

    faces = _lower_faces(d)
    face_lookup = cube_lookup(sys, d - 1, budget=budget)
    checked = 0

    def witnesses():
        nonlocal checked
        for r in reps:
            for start in range(0, n**free, search.CHUNK):
                stop = min(start + search.CHUNK, n**free)
                tail = search.decode(np.arange(start, stop), n, free).astype(np.int64)
                rows = np.concatenate([np.full((tail.shape[0], 1), r), tail], axis=1)
                ok = np.ones(rows.shape[0], dtype=bool)
                for face in faces:
                    ok &= face_lookup.contains_rows(rows[:, face])
                corners = rows[ok]
                checked += corners.shape[0]
                extends = search.contains(completions, search.encode(corners, n))
                for k in np.flatnonzero(~extends):
                    yield corners[k]

    found = list(witnesses())
    return Report.from_witnesses(
        f"completion[{d}]",
        found,
        exhaustive=True,
        states_visited=checked,
        candidates=candidates,
        mode="exhaustive",
    )


def check_fibrant(sys: FiniteSystem, d_max: int, **kwargs) -> Report:
    """Completion in every dimension ``1 .. d_max``."""
    reports = [check_completion(sys, d, **kwargs) for d in range(1, d_max + 1)]
    return Report.from_witnesses(
        f"fibrant[{d_max}]",
        (dict(d=k + 1, witnesses=r.witnesses) for k, r in enumerate(reports) if not r.passed),
        exhaustive=all(r.exhaustive for r in reports),
        states_visited=sum(r.states_visited for r in reports),
        dimensions={k + 1: r.status for k, r in enumerate(reports)},
    )


def check_ergodic(sys: FiniteSystem, *, budget: int = DEFAULT_CUBE_BUDGET) -> Report:
    """``C^[1] = X x X``."""
    lookup = cube_lookup(sys, 1, budget=budget)
    n = sys.points
    pairs = np.stack(np.meshgrid(np.arange(n), np.arange(n), indexing="ij"), -1).reshape(-1, 2)
    ok = lookup.contains_rows(pairs)
    return Report.from_witnesses(
        "ergodic",
        pairs[~ok],
        states_visited=lookup.states_visited,
        size=lookup.size,
    )


def uniqueness_collisions(C: CubeSet) -> np.ndarray:
    """Pairs of codes of distinct cubes that agree off the top vertex."""
    n_top = C.system.points ** (vertex_count(C.d) - 1)
    lower = C.codes % n_top
    order = np.argsort(lower, kind="stable")
    lower, codes = lower[order], C.codes[order]
    same = np.flatnonzero(lower[1:] == lower[:-1])
    return np.stack([codes[same], codes[same + 1]], axis=1)


def check_uniqueness(C: CubeSet) -> bool:
    """Whether a cube of ``C`` is determined by its values off ``1⃗``."""
    return not uniqueness_collisions(C).size


def uniqueness_report(C: CubeSet) -> Report:
    collisions = uniqueness_collisions(C)
    width = vertex_count(C.d)
    return Report.from_witnesses(
        f"uniqueness[{C.d}]",
        (search.decode(pair, C.system.points, width) for pair in collisions),
        states_visited=C.size,
    )


def check_glueing(
    C: CubeSet,
    *,
    limit: int = DEFAULT_CORNERS_EXHAUSTIVE,
    sample: int = DEFAULT_SAMPLE,
    seed: int = DEFAULT_SEED,
) -> Report:
    """Cubes ``(c1, c2)`` and ``(c2, c3)`` glue to a cube ``(c1, c3)``.

    Cubes are indexed by floor and by ceiling; the pairs sharing a middle
    face are all checked when there are at most ``limit`` of them.
    """
    if C.d < 1:
        raise InvalidDimension("Glueing needs `d >= 1`.")
    half = C.system.points ** (vertex_count(C.d - 1))
    floors, ceilings = C.codes % half, C.codes // half

    by_ceiling = np.argsort(ceilings, kind="stable")
    by_floor = np.argsort(floors, kind="stable")
    middles, left_counts = np.unique(ceilings, return_counts=True)
    right_counts = np.searchsorted(floors[by_floor], middles, side="right") - np.searchsorted(
        floors[by_floor], middles, side="left"
    )
    total = int((left_counts * right_counts).sum())

    if total > limit:
        rng = np.random.default_rng(seed)
        i = rng.integers(0, C.size, size=sample)
        middle = ceilings[i]
        lo = np.searchsorted(floors[by_floor], middle, side="left")
        hi = np.searchsorted(floors[by_floor], middle, side="right")
        # Only middles that are also a floor have a right hand cube.
        keep = hi > lo
        i, lo, hi = i[keep], lo[keep], hi[keep]
        j = by_floor[lo + (rng.random(i.size) * (hi - lo)).astype(np.int64)]
        glued = floors[i] + half * ceilings[j]
        ok = search.contains(C.codes, glued)
        return Report.from_witnesses(
            f"glueing[{C.d}]",
            (dict(left=int(C.codes[i[k]]), right=int(C.codes[j[k]])) for k in np.flatnonzero(~ok)),
            exhaustive=False,
            states_visited=int(keep.sum()),
            pairs=total,
        )

    left_sorted = floors[by_ceiling]
    right_sorted = ceilings[by_floor]
    left_start = np.concatenate([[0], np.cumsum(left_counts)])
    right_lo = np.searchsorted(floors[by_floor], middles, side="left")

    def witnesses():
        for k in range(middles.size):
            if not right_counts[k]:
                continue
            lefts = left_sorted[left_start[k] : left_start[k + 1]]
            rights = right_sorted[right_lo[k] : right_lo[k] + right_counts[k]]
            glued = (lefts[:, None] + half * rights[None, :]).ravel()
            for code in glued[~search.contains(C.codes, glued)][:1]:
                yield dict(middle=int(middles[k]), glued=int(code))

    return Report.from_witnesses(
        f"glueing[{C.d}]", witnesses(), states_visited=total, pairs=total
    )


def _check_vertex_set(d: int, V: Sequence[int]) -> List[int]:
    V = sorted(set(int(v) for v in V))
    if not V:
        raise InvalidVertexSet("Vertex set is empty.")
    if V[0] < 0 or V[-1] >= vertex_count(d):
        raise InvalidVertexSet(f"Vertex outside the {d} cube.")
    members = set(V)
    for v in V:
        missing = [int(w) for w in subcube_below(v) if w not in members]
        if missing:
            raise InvalidVertexSet(
                f"Vertex set is not downward closed: `{v}` is in it but `{missing[0]}` is not."
            )
    return V


def hom_space(
    sys: FiniteSystem,
    d: int,
    V: Sequence[int],
    *,
    limit: int = DEFAULT_CORNERS_EXHAUSTIVE,
    budget: int = DEFAULT_CUBE_BUDGET,
) -> np.ndarray:
    """``Hom(V, X)``: maps on ``V`` whose restriction below each ``ω`` is a cube.

    Rows list values on ``V`` in increasing vertex order.
    """
    V = _check_vertex_set(d, V)
    n = sys.points
    if n ** len(V) > limit:
        raise BudgetExceeded(
            f"hom[{d}]({sys.name})",
            budget=limit,
            detail=f"{n ** len(V)} candidate maps on {len(V)} vertices.",
        )
    position = {v: k for k, v in enumerate(V)}
    checks = [
        (popcount(v), [position[int(w)] for w in subcube_below(v)])
        for v in V
        if popcount(v) > 0
    ]
    rows = search.decode(np.arange(n ** len(V)), n, len(V)).astype(np.int64)
    keep = np.ones(rows.shape[0], dtype=bool)
    for k, columns in checks:
        keep &= cube_lookup(sys, k, budget=budget).contains_rows(rows[:, columns])
    return rows[keep]


def check_extension_property(
    sys: FiniteSystem,
    d: int,
    V: Sequence[int],
    *,
    limit: int = DEFAULT_CORNERS_EXHAUSTIVE,
    budget: int = DEFAULT_CUBE_BUDGET,
) -> Report:
    """Every ``α`` in ``Hom(V, X)`` is the restriction of a cube of ``C^[d]``."""
    V = _check_vertex_set(d, V)
    homs = hom_space(sys, d, V, limit=limit, budget=budget)
    lookup = cube_lookup(sys, d, budget=budget)
    restricted = np.unique(search.encode(search.decode(lookup.codes, sys.points, vertex_count(d))[:, V], sys.points))
    ok = search.contains(restricted, search.encode(lookup.normalize(homs), sys.points))
    return Report.from_witnesses(
        f"extension[{d}]",
        homs[~ok],
        states_visited=int(homs.shape[0]),
        vertices=V,
        homs=int(homs.shape[0]),
    )


def check_projections(sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> Report:
    """Floors and ceilings of ``C^[d]`` are exactly ``C^[d-1]``."""
    if d < 1:
        raise InvalidDimension("Projections need `d >= 1`.")
    C = dynamical_cubes(sys, d, budget=budget)
    lower = dynamical_cubes(sys, d - 1, budget=budget)
    half = sys.points ** vertex_count(d - 1)
    witnesses = []
    for name, image in (("floor", np.unique(C.codes % half)), ("ceiling", np.unique(C.codes // half))):
        if not np.array_equal(image, lower.codes):
            witnesses.append(
                dict(
                    projection=name,
                    extra=np.setdiff1d(image, lower.codes)[:5],
                    missing=np.setdiff1d(lower.codes, image)[:5],
                )
            )
    return Report.from_witnesses(
        f"projections[{d}]", witnesses, states_visited=C.size + lower.size
    )


def check_slices(
    sys: FiniteSystem,
    d: int,
    *,
    sample: int | None = DEFAULT_SAMPLE,
    seed: int = DEFAULT_SEED,
    budget: int = DEFAULT_CUBE_BUDGET,
) -> Report:
    """``C_x = Y_x`` for every ``x``, and ``x^[d]`` is in the face group orbit
    of every cube of ``C_x``."""
    C = dynamical_cubes(sys, d, budget=budget)
    moves = cube_moves(sys, d, "face")
    failures: List[dict] = []
    visited = C.size
    exhaustive = True
    for x in range(sys.points):
        Cx, Yx = cubes_at(C, x), y_space(sys, d, x, budget=budget)
        if Cx != Yx:
            failures.append(dict(x=x, c_size=Cx.size, y_size=Yx.size))
            continue
        rows, full = _sample_rows(Cx.rows(), sample, seed + x)
        exhaustive &= full
        constant = search.encode(_constants([x], d), sys.points)
        for row in rows:
            orbit = search.closure(row[None, :], moves, sys.points, budget=budget, label=f"f-orbit[{d}]")
            visited += orbit.visited
            if not search.contains(orbit.codes, constant)[0]:
                failures.append(dict(x=x, cube=row))
                break
    return Report.from_witnesses(
        f"slices[{d}]", failures, exhaustive=exhaustive, states_visited=visited
    )


def check_hk_minimal(sys: FiniteSystem, d: int, *, budget: int = DEFAULT_CUBE_BUDGET) -> Report:
    """The single orbit ``HK^[d] 0^[d]`` is all of ``C^[d]``."""
    if not sys.is_minimal:
        return Report.not_applicable(f"hk-minimal[{d}]", "system is not minimal")
    single = dynamical_cubes(sys, d, budget=budget)
    union = dynamical_cubes(sys, d, budget=budget, union=True)
    missing = np.setdiff1d(union.codes, single.codes)
    return Report.from_witnesses(
        f"hk-minimal[{d}]",
        search.decode(missing, sys.points, vertex_count(d)),
        states_visited=single.size + union.size,
        size=single.size,
    )
