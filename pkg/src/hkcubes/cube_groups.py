"""Host-Kra cube groups ``HK^[d]`` and face groups ``F^[d]``.

Both are subgroups of ``G^{2^d}`` and are never stored as tables. A tuple
group is the orbit of the identity tuple under left multiplication by its
generators ``[h]_F``, materialized as a sorted array of packed codes (see
:mod:`hkcubes.search`). Generated groups are cached per base group.
"""

# =========================================================================== #
import itertools
import threading
import weakref
from collections import deque
from typing import Annotated, Dict, Iterator, List, Literal, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# --------------------------------------------------------------------------- #
from hkcubes import search, util
from hkcubes.config import (
    DEFAULT_REWRITE_BUDGET,
    DEFAULT_SAMPLE,
    DEFAULT_SEED,
    DEFAULT_TUPLE_BUDGET,
)
from hkcubes.cubes import (
    CubeMorphism,
    Face,
    doubling_morphism,
    enumerate_faces,
    face_preimage,
    order_upper_faces,
    vertex_count,
)
from hkcubes.errors import (
    BudgetExceeded,
    DimensionMismatch,
    InternalInvariantViolation,
    InvalidDimension,
    InvalidLetter,
    NotMember,
)
from hkcubes.groups import FiniteGroup, commutator, lower_central_term
from hkcubes.report import Report

logger = util.get_logger(__name__)

Which = Literal["hk", "hk_hyperfaces", "face"]
GeneratorChoice = Literal["generators", "elements"]


class TupleElement(BaseModel):
    """An element of ``G^{{0,1}^d}``, one base element per vertex."""

    model_config = ConfigDict(frozen=True)

    d: Annotated[int, Field(ge=0)]
    entries: Tuple[int, ...]

    @model_validator(mode="after")
    def check_length(self):
        if len(self.entries) != 1 << self.d:
            raise ValueError(
                f"Tuple of dimension {self.d} needs {1 << self.d} entries, "
                f"got {len(self.entries)}."
            )
        return self

    @classmethod
    def of(cls, entries: Sequence[int] | np.ndarray) -> "TupleElement":
        entries = [int(v) for v in entries]
        return cls(d=len(entries).bit_length() - 1, entries=tuple(entries))

    @classmethod
    def identity(cls, G: FiniteGroup, d: int) -> "TupleElement":
        return cls.diagonal(G.identity, d)

    @classmethod
    def diagonal(cls, h: int, d: int) -> "TupleElement":
        return cls(d=d, entries=(int(h),) * vertex_count(d))

    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def labels(self, G: FiniteGroup) -> List[str]:
        return [G.label(g) for g in self.entries]


def _check(G: FiniteGroup, g: TupleElement) -> np.ndarray:
    arr = g.array()
    if arr.size and (arr.min() < 0 or arr.max() >= G.order):
        raise NotMember(f"Tuple entries are not elements of `{G.name}`.")
    return arr


def tuple_mul(G: FiniteGroup, a: TupleElement, b: TupleElement) -> TupleElement:
    if a.d != b.d:
        raise DimensionMismatch(f"Tuples of dimension {a.d} and {b.d}.")
    return TupleElement(d=a.d, entries=tuple(G.mult[_check(G, a), _check(G, b)].tolist()))


def tuple_inv(G: FiniteGroup, a: TupleElement) -> TupleElement:
    return TupleElement(d=a.d, entries=tuple(G.inv[_check(G, a)].tolist()))


def tuple_commutator(G: FiniteGroup, a: TupleElement, b: TupleElement) -> TupleElement:
    return tuple_mul(G, tuple_mul(G, tuple_mul(G, a, b), tuple_inv(G, a)), tuple_inv(G, b))


def face_generator(G: FiniteGroup, h: int, F: Face, d: int | None = None) -> TupleElement:
    """``[h]_F``: ``h`` on the vertices of ``F``, identity elsewhere."""
    d = F.d if d is None else d
    if F.d != d:
        raise DimensionMismatch(f"Face of dimension {F.d} used at dimension {d}.")
    h = G.validate(h)
    entries = np.where(F.mask(), h, G.identity)
    return TupleElement(d=d, entries=tuple(int(v) for v in entries))


def upper_hyperfaces(d: int) -> List[Face]:
    return [Face.hyperface(d, i, 1) for i in range(1, d + 1)]


def _letters(
    G: FiniteGroup, d: int, which: Which, choice: GeneratorChoice
) -> List[Tuple[int, Face]]:
    elements = (
        list(G.generators)
        if choice == "generators"
        else [g for g in G.elements() if g != G.identity]
    )
    match which:
        case "face":
            faces = upper_hyperfaces(d)
        case "hk":
            faces = upper_hyperfaces(d) + [Face.full(d)]
        case "hk_hyperfaces":
            faces = enumerate_faces(d, "hyperface") if d else [Face.full(d)]
        case bad:
            raise ValueError(f"Unknown tuple group `{bad}`.")

    return [(h, F) for F in faces for h in elements]


def face_generators(
    G: FiniteGroup, d: int, *, choice: GeneratorChoice = "generators"
) -> List[TupleElement]:
    """``[g]_F`` over upper hyperfaces ``F``, ``d * |gens|`` of them."""
    return [face_generator(G, h, F) for h, F in _letters(G, d, "face", choice)]


def hk_generators(
    G: FiniteGroup,
    d: int,
    *,
    choice: GeneratorChoice = "generators",
    presentation: Literal["diagonal", "hyperfaces"] = "diagonal",
) -> List[TupleElement]:
    """Generators of ``HK^[d]``.

    The ``diagonal`` presentation uses upper hyperfaces plus ``h^[d]``; the
    ``hyperfaces`` presentation uses every hyperface. Both generate the same
    group, see :func:`verify_hk_presentations`.
    """
    which: Which = "hk" if presentation == "diagonal" else "hk_hyperfaces"
    return [face_generator(G, h, F) for h, F in _letters(G, d, which, choice)]


def tuple_moves(G: FiniteGroup, letters: Sequence[Tuple[int, Face]]) -> List[search.Move]:
    """Left multiplication by ``[h]_F`` as a BFS move."""
    return [
        search.Move(G.mult[h], F.mask(), f"[{G.label(h)}]_{F}") for h, F in letters
    ]


class TupleGroup:
    """A generated subgroup of ``G^{2^d}`` as sorted packed codes."""

    def __init__(
        self,
        group: FiniteGroup,
        d: int,
        which: str,
        codes: np.ndarray,
        *,
        levels: int = 0,
    ):
        self.group = group
        self.d = d
        self.which = which
        self.codes = codes
        self.levels = levels

    @property
    def size(self) -> int:
        return int(self.codes.size)

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"TupleGroup(group={self.group.name!r}, d={self.d}, which={self.which!r}, size={self.size})"

    def encode(self, rows: np.ndarray) -> np.ndarray:
        return search.encode(rows, self.group.order)

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        return search.contains(self.codes, self.encode(rows))

    def __contains__(self, g: TupleElement) -> bool:
        if g.d != self.d:
            raise DimensionMismatch(f"Tuple of dimension {g.d} tested at {self.d}.")
        arr = g.array()
        if arr.min() < 0 or arr.max() >= self.group.order:
            return False
        return bool(self.contains_rows(arr[None, :])[0])

    def rows(self) -> np.ndarray:
        return search.decode(self.codes, self.group.order, vertex_count(self.d))

    def elements(self) -> Iterator[TupleElement]:
        for row in self.rows():
            yield TupleElement(d=self.d, entries=tuple(int(v) for v in row))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TupleGroup):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.codes, other.codes)

    def __hash__(self) -> int:
        return hash((self.d, self.codes.tobytes()))


_CACHE: "weakref.WeakKeyDictionary[FiniteGroup, Dict[Tuple[int, str], TupleGroup]]"
_CACHE = weakref.WeakKeyDictionary()
_CACHE_LOCK = threading.Lock()


def generate_from_letters(
    G: FiniteGroup,
    d: int,
    letters: Sequence[Tuple[int, Face]],
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    label: str = "tuple-group",
) -> TupleGroup:
    start = np.full((1, vertex_count(d)), G.identity)
    closure = search.closure(
        start, tuple_moves(G, letters), G.order, budget=budget, label=label
    )
    return TupleGroup(G, d, label, closure.codes, levels=closure.levels)


def generated_tuple_group(
    G: FiniteGroup,
    d: int,
    which: Which = "hk",
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
) -> TupleGroup:
    """``HK^[d]`` (``hk`` or ``hk_hyperfaces``) or ``F^[d]`` (``face``), cached."""
    if d < 0:
        raise InvalidDimension(f"Dimension `{d}` must be non-negative.")

    key = (d, which)
    with _CACHE_LOCK:
        cached = _CACHE.get(G, {}).get(key)
    if cached is not None:
        return cached

    label = f"{which}[{d}]({G.name})"
    group = generate_from_letters(
        G, d, _letters(G, d, which, "generators"), budget=budget, label=label
    )
    group.which = which
    with _CACHE_LOCK:
        _CACHE.setdefault(G, {})[key] = group
    return group


def tuple_group_membership(
    G: FiniteGroup,
    g: TupleElement,
    which: Which = "hk",
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
) -> bool:
    return g in generated_tuple_group(G, g.d, which, budget=budget)


def factor_hk(
    G: FiniteGroup, g: TupleElement, *, budget: int = DEFAULT_TUPLE_BUDGET
) -> Tuple[TupleElement, int]:
    """Split ``g = f * t^[d]`` with ``f`` in ``F^[d]`` and ``t = g(0⃗)``."""
    if not tuple_group_membership(G, g, "hk", budget=budget):
        raise NotMember("Tuple is not in the Host-Kra cube group.")

    t = g.entries[0]
    f = tuple_mul(G, g, TupleElement.diagonal(G.inverse(t), g.d))
    if f.entries[0] != G.identity:
        raise InternalInvariantViolation("Face part does not vanish at the origin.")
    if not tuple_group_membership(G, f, "face", budget=budget):
        raise InternalInvariantViolation(
            f"Face part `{f.entries}` of `{g.entries}` is not in the face group."
        )
    return f, t


# --------------------------------------------------------------------------- #
# Face words


class FaceLetter(BaseModel):
    model_config = ConfigDict(frozen=True)

    element: int
    face: Face


class FaceWord(BaseModel):
    """A product ``[x_1]_{F_1} ... [x_m]_{F_m}`` evaluated left to right."""

    model_config = ConfigDict(frozen=True)

    d: Annotated[int, Field(ge=0)]
    letters: Tuple[FaceLetter, ...] = ()

    @classmethod
    def of(cls, d: int, letters: Sequence[Tuple[int, Face]]) -> "FaceWord":
        return cls(
            d=d,
            letters=tuple(FaceLetter(element=int(h), face=F) for h, F in letters),
        )

    def evaluate(self, G: FiniteGroup) -> TupleElement:
        out = np.full(vertex_count(self.d), G.identity, dtype=np.int64)
        for letter in self.letters:
            if letter.face.d != self.d:
                raise DimensionMismatch(
                    f"Letter on a face of dimension {letter.face.d} in a word of "
                    f"dimension {self.d}."
                )
            h = np.where(letter.face.mask(), G.validate(letter.element), G.identity)
            out = G.mult[out, h]
        return TupleElement.of(out)

    def __len__(self) -> int:
        return len(self.letters)

    def render(self, G: FiniteGroup) -> str:
        return "".join(f"[{G.label(L.element)}]_{L.face}" for L in self.letters) or "Id"


def _intersection_ranks(order: List[Face]) -> np.ndarray:
    rank = {F: k for k, F in enumerate(order)}
    out = np.empty((len(order), len(order)), dtype=np.int64)
    for a, b in itertools.product(range(len(order)), repeat=2):
        meet = order[a].intersect(order[b])
        assert meet is not None
        out[a, b] = rank[meet]
    return out


def normal_form(
    G: FiniteGroup,
    w: FaceWord,
    *,
    budget: int = DEFAULT_REWRITE_BUDGET,
) -> FaceWord:
    """Rewrite ``w`` as one letter per upper face in ``order_upper_faces``.

    Faces are handled from the last in the order down to the first. Every
    letter on the current face is bubbled right past the remaining letters
    with ``[g]_{S_j}[h]_{S_i} = [[g,h]]_{S_i∩S_j}[h]_{S_i}[g]_{S_j}`` and
    merged into the accumulated letter at the end. A commutator lands on
    ``S_i ∩ S_j``, which comes strictly before ``S_j``, so each pass only
    creates letters for later passes and the rewriting terminates.
    """
    d = w.d
    if d < 1:
        raise InvalidDimension("Face words need `d >= 1`.")

    order = order_upper_faces(d)
    rank = {F: k for k, F in enumerate(order)}
    meet = _intersection_ranks(order)

    prefix: List[Tuple[int, int]] = []
    for letter in w.letters:
        if letter.face.d != d or not letter.face.is_upper:
            raise InvalidLetter(f"Letter face `{letter.face}` is not an upper face of dimension {d}.")
        h = G.validate(letter.element)
        if h != G.identity:
            prefix.append((h, rank[letter.face]))

    mult, inv, e = G.mult, G.inv, G.identity
    steps = 0
    final = [e] * len(order)
    for r in reversed(range(len(order))):
        acc = e
        while True:
            positions = [k for k, (_, rk) in enumerate(prefix) if rk == r]
            if not positions:
                break
            p = positions[-1]
            g = prefix[p][0]
            moved: List[Tuple[int, int]] = []
            for h, ri in prefix[p + 1 :]:
                steps += 1
                if steps > budget:
                    raise BudgetExceeded(
                        "normal-form", visited=steps, frontier=len(prefix), budget=budget
                    )
                c = int(mult[mult[mult[g, h], inv[g]], inv[h]])
                if c != e:
                    moved.append((c, int(meet[r, ri])))
                moved.append((h, ri))
            prefix = prefix[:p] + moved
            acc = int(mult[g, acc])
        final[r] = acc

    if prefix:
        raise InternalInvariantViolation("Normal form left unprocessed letters.")
    return FaceWord.of(d, list(zip(final, order)))


_WORDS: "weakref.WeakKeyDictionary[FiniteGroup, Dict[int, Dict[int, Tuple[int, int] | None]]]"
_WORDS = weakref.WeakKeyDictionary()


def _face_group_tree(
    G: FiniteGroup, d: int, budget: int
) -> Tuple[Dict[int, Tuple[int, int] | None], List[Tuple[int, Face]]]:
    letters = _letters(G, d, "face", "generators")
    with _CACHE_LOCK:
        tree = _WORDS.get(G, {}).get(d)
    if tree is not None:
        return tree, letters

    n, width = G.order, vertex_count(d)
    powers = search.radix(n, width, label="face-words")
    masks = [F.mask() for _, F in letters]
    start = tuple([G.identity] * width)
    tree = {int(np.dot(start, powers)): None}
    queue = deque([np.array(start, dtype=np.int64)])
    while queue:
        row = queue.popleft()
        code = int(row @ powers)
        for k, ((h, _), mask) in enumerate(zip(letters, masks)):
            nxt = row.copy()
            nxt[mask] = G.mult[h, row[mask]]
            key = int(nxt @ powers)
            if key in tree:
                continue
            tree[key] = (code, k)
            queue.append(nxt)
            if len(tree) > budget:
                raise BudgetExceeded("face-words", visited=len(tree), frontier=len(queue), budget=budget)

    with _CACHE_LOCK:
        _WORDS.setdefault(G, {})[d] = tree
    return tree, letters


def face_word_for(
    G: FiniteGroup, f: TupleElement, *, budget: int = DEFAULT_TUPLE_BUDGET
) -> FaceWord:
    """A word in the upper hyperface generators evaluating to ``f``."""
    tree, letters = _face_group_tree(G, f.d, budget)
    code = int(search.encode(f.array(), G.order)[0])
    if code not in tree:
        raise NotMember("Tuple is not in the face group.")

    out: List[Tuple[int, Face]] = []
    while (step := tree[code]) is not None:
        code, k = step
        out.append(letters[k])
    return FaceWord.of(f.d, out)


def ceiling_hom(g: TupleElement) -> TupleElement:
    """Entries on ``{ω_d = 1}`` re-indexed over ``{0,1}^{d-1}``."""
    if g.d < 1:
        raise InvalidDimension("Ceiling needs `d >= 1`.")
    half = 1 << (g.d - 1)
    return TupleElement(d=g.d - 1, entries=g.entries[half:])


def floor_hom(g: TupleElement) -> TupleElement:
    if g.d < 1:
        raise InvalidDimension("Floor needs `d >= 1`.")
    half = 1 << (g.d - 1)
    return TupleElement(d=g.d - 1, entries=g.entries[:half])


def pure_ceiling_mixed_decompose(
    G: FiniteGroup,
    g: TupleElement,
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    rewrite_budget: int = DEFAULT_REWRITE_BUDGET,
) -> Tuple[TupleElement, TupleElement]:
    """``(h, s)`` with ``g = (Id^[d-1] x h)(s x s)``."""
    d = g.d
    if d < 1:
        raise InvalidDimension("Decomposition needs `d >= 1`.")

    f, t = factor_hk(G, g, budget=budget)
    word = normal_form(G, face_word_for(G, f, budget=budget), budget=rewrite_budget)
    pure = FaceWord(d=d, letters=tuple(L for L in word.letters if L.face.is_pure_ceiling))
    mixed = FaceWord(d=d, letters=tuple(L for L in word.letters if L.face.is_mixed))

    P, M = pure.evaluate(G), mixed.evaluate(G)
    if any(v != G.identity for v in floor_hom(P).entries):
        raise InternalInvariantViolation("Pure ceiling part is not identity on the floor.")
    if floor_hom(M) != ceiling_hom(M):
        raise InternalInvariantViolation("Mixed part does not have the shape `s x s`.")

    h = ceiling_hom(P)
    s = tuple_mul(G, floor_hom(M), TupleElement.diagonal(t, d - 1))

    ident = TupleElement.identity(G, d - 1)
    id_h = TupleElement(d=d, entries=ident.entries + h.entries)
    if not tuple_group_membership(G, id_h, "face", budget=budget):
        raise InternalInvariantViolation("`Id x h` is not in the face group.")
    product = tuple_mul(G, id_h, TupleElement(d=d, entries=s.entries + s.entries))
    if product != g:
        raise InternalInvariantViolation(
            f"Decomposition of `{g.entries}` reconstructs `{product.entries}`."
        )
    return h, s


# --------------------------------------------------------------------------- #
# Checks


def _element_pairs(
    G: FiniteGroup, count: int, *, exhaustive_limit: int, trials: int, seed: int
) -> Tuple[np.ndarray, np.ndarray, bool]:
    n = G.order
    if n * n * count <= exhaustive_limit:
        g1, g2 = np.divmod(np.arange(n * n), n)
        return g1, g2, True
    rng = np.random.default_rng(seed)
    g1, g2 = rng.integers(0, n, size=(2, trials))
    return g1, g2, False


def verify_key_commutator(
    G: FiniteGroup,
    d: int,
    *,
    trials: int = DEFAULT_SAMPLE,
    seed: int = DEFAULT_SEED,
    exhaustive_limit: int = 1 << 20,
) -> Report:
    """``[[g_1]_{F_1}, [g_2]_{F_2}] = [[g_1, g_2]]_{F_1∩F_2}`` over face pairs."""
    faces = enumerate_faces(d, "all")
    pairs = [
        (F1, F2, meet)
        for F1, F2 in itertools.product(faces, repeat=2)
        if (meet := F1.intersect(F2)) is not None
    ]
    g1, g2, exhaustive = _element_pairs(
        G, len(pairs), exhaustive_limit=exhaustive_limit, trials=trials, seed=seed
    )
    mult, inv, e = G.mult, G.inv, G.identity
    base = mult[mult[mult[g1, g2], inv[g1]], inv[g2]]

    witnesses, checked = [], 0
    for F1, F2, F12 in pairs:
        A = np.where(F1.mask()[None, :], g1[:, None], e)
        B = np.where(F2.mask()[None, :], g2[:, None], e)
        lhs = mult[mult[mult[A, B], inv[A]], inv[B]]
        rhs = np.where(F12.mask()[None, :], base[:, None], e)
        bad = np.flatnonzero((lhs != rhs).any(axis=1))
        checked += g1.size
        witnesses += [
            dict(g1=int(g1[k]), g2=int(g2[k]), F1=str(F1), F2=str(F2)) for k in bad
        ]

    return Report.from_witnesses(
        "key-commutator",
        witnesses,
        exhaustive=exhaustive,
        states_visited=checked,
        group=G.name,
        d=d,
        face_pairs=len(pairs),
    )


def face_group_ceiling_image(
    G: FiniteGroup, d: int, *, budget: int = DEFAULT_TUPLE_BUDGET
) -> Report:
    """The group generated by ``φ_c`` of the face generators is ``HK^[d-1]``."""
    if d < 1:
        raise InvalidDimension("Ceiling image needs `d >= 1`.")

    # NOTE: ``φ_c([h]_{ω_j=1})`` is ``[h]_{ω_j=1}`` one dimension down for
    #       ``j < d`` and the diagonal ``h^[d-1]`` for ``j = d``.
    images = []
    for h, F in _letters(G, d, "face", "generators"):
        image = ceiling_hom(face_generator(G, h, F))
        images.append(image)
    letters = []
    for h, F in _letters(G, d, "face", "generators"):
        j = F.constrained[0][0]
        letters.append((h, Face.hyperface(d - 1, j, 1) if j < d else Face.full(d - 1)))

    for (h, F), image in zip(letters, images):
        if face_generator(G, h, F, d - 1) != image:
            raise InternalInvariantViolation(f"Ceiling image of `[{h}]_{F}` mismatch.")

    generated = generate_from_letters(
        G, d - 1, letters, budget=budget, label=f"ceiling-image[{d}]({G.name})"
    )
    hk = generated_tuple_group(G, d - 1, "hk", budget=budget)
    missing = np.setdiff1d(hk.codes, generated.codes)
    extra = np.setdiff1d(generated.codes, hk.codes)
    width = vertex_count(d - 1)
    witnesses = [
        dict(kind=kind, entries=search.decode(codes[:1], G.order, width)[0])
        for kind, codes in (("missing", missing), ("extra", extra))
        if codes.size
    ]
    return Report.from_witnesses(
        "face-group-ceiling-image",
        witnesses,
        states_visited=generated.size,
        image_size=generated.size,
        hk_size=hk.size,
        d=d,
    )


def verify_doubling_inclusion(
    G: FiniteGroup,
    d: int,
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    exhaustive_limit: int = 1 << 16,
) -> Report:
    """``D_i(F^[d]) ⊆ F^[d+1]`` for every ``1 <= i <= d+1``.

    Generators are checked through ``D_i([h]_F) = [h]_{π̂_i^{-1}(F)}``. The
    whole face group is checked by membership when it is small enough,
    otherwise only its generators are.
    """
    face = generated_tuple_group(G, d, "face", budget=budget)
    face_up = generated_tuple_group(G, d + 1, "face", budget=budget)
    exhaustive = face.size <= exhaustive_limit
    rows = face.rows() if exhaustive else np.array(
        [g.entries for g in face_generators(G, d)] or [[G.identity] * vertex_count(d)]
    )

    witnesses: List[dict] = []
    for i in range(1, d + 2):
        pi: CubeMorphism = doubling_morphism(i, d)
        for h, F in _letters(G, d, "face", "generators"):
            pre = face_preimage(F, pi)
            doubled = face_generator(G, h, F).entries
            doubled = tuple(doubled[t] for t in pi.table())
            if pre is None or face_generator(G, h, pre).entries != doubled:
                witnesses.append(dict(i=i, h=h, face=str(F), kind="generator-identity"))

        images = rows[:, pi.table()]
        bad = np.flatnonzero(~face_up.contains_rows(images))
        witnesses += [dict(i=i, entries=rows[k], kind="membership") for k in bad]

        if i == d + 1 and not np.array_equal(images, np.concatenate([rows, rows], axis=1)):
            witnesses.append(dict(i=i, kind="floor-ceiling-duplication"))

    return Report.from_witnesses(
        "doubling-inclusion",
        witnesses,
        exhaustive=exhaustive,
        states_visited=int(rows.shape[0]) * (d + 1),
        d=d,
        face_size=face.size,
    )


def verify_hk_presentations(
    G: FiniteGroup, d: int, *, budget: int = DEFAULT_TUPLE_BUDGET
) -> Report:
    diagonal = generated_tuple_group(G, d, "hk", budget=budget)
    hyperfaces = generated_tuple_group(G, d, "hk_hyperfaces", budget=budget)
    witnesses = [] if diagonal == hyperfaces else [
        dict(diagonal=diagonal.size, hyperfaces=hyperfaces.size)
    ]
    return Report.from_witnesses(
        "hk-presentations",
        witnesses,
        states_visited=diagonal.size + hyperfaces.size,
        size=diagonal.size,
    )


def verify_face_group_vertex_zero(
    G: FiniteGroup, d: int, *, budget: int = DEFAULT_TUPLE_BUDGET
) -> Report:
    face = generated_tuple_group(G, d, "face", budget=budget)
    rows = face.rows()
    bad = np.flatnonzero(rows[:, 0] != G.identity)
    return Report.from_witnesses(
        "face-group-vertex-zero",
        (rows[k] for k in bad),
        states_visited=face.size,
    )


def verify_face_inclusion(
    G: FiniteGroup, d: int, *, budget: int = DEFAULT_TUPLE_BUDGET
) -> Report:
    face = generated_tuple_group(G, d, "face", budget=budget)
    hk = generated_tuple_group(G, d, "hk", budget=budget)
    missing = np.setdiff1d(face.codes, hk.codes)
    return Report.from_witnesses(
        "face-subset-hk",
        search.decode(missing[:10], G.order, vertex_count(d)),
        states_visited=face.size,
        face_size=face.size,
        hk_size=hk.size,
    )


def _sample_rows(rows: np.ndarray, limit: int, seed: int) -> Tuple[np.ndarray, bool]:
    if rows.shape[0] <= limit:
        return rows, True
    rng = np.random.default_rng(seed)
    return rows[np.sort(rng.choice(rows.shape[0], size=limit, replace=False))], False


def verify_factor_hk(
    G: FiniteGroup,
    d: int,
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    exhaustive_limit: int = 1 << 16,
    seed: int = DEFAULT_SEED,
) -> Report:
    """``g = f * t^[d]`` with ``f`` in ``F^[d]`` for every ``g`` in ``HK^[d]``."""
    hk = generated_tuple_group(G, d, "hk", budget=budget)
    rows, exhaustive = _sample_rows(hk.rows(), exhaustive_limit, seed)
    witnesses = []
    for row in rows:
        g = TupleElement.of(row)
        try:
            f, t = factor_hk(G, g, budget=budget)
        except InternalInvariantViolation as err:
            witnesses.append(dict(entries=row, error=str(err)))
            continue
        if tuple_mul(G, f, TupleElement.diagonal(t, d)) != g:
            witnesses.append(dict(entries=row, error="reconstruction"))

    return Report.from_witnesses(
        "factor-hk",
        witnesses,
        exhaustive=exhaustive,
        states_visited=int(rows.shape[0]),
        hk_size=hk.size,
    )


def verify_decomposition(
    G: FiniteGroup,
    d: int,
    *,
    budget: int = DEFAULT_TUPLE_BUDGET,
    rewrite_budget: int = DEFAULT_REWRITE_BUDGET,
    exhaustive_limit: int = 1 << 14,
    seed: int = DEFAULT_SEED,
) -> Report:
    """Pure ceiling / mixed decomposition reconstructs every ``g`` in ``HK^[d]``."""
    hk = generated_tuple_group(G, d, "hk", budget=budget)
    rows, exhaustive = _sample_rows(hk.rows(), exhaustive_limit, seed)
    witnesses = []
    for row in rows:
        try:
            pure_ceiling_mixed_decompose(
                G, TupleElement.of(row), budget=budget, rewrite_budget=rewrite_budget
            )
        except InternalInvariantViolation as err:
            witnesses.append(dict(entries=row, error=str(err)))

    return Report.from_witnesses(
        "pure-ceiling-mixed",
        witnesses,
        exhaustive=exhaustive,
        states_visited=int(rows.shape[0]),
        hk_size=hk.size,
    )


def verify_normal_form(
    G: FiniteGroup,
    d: int,
    *,
    max_length: int = 4,
    rewrite_budget: int = DEFAULT_REWRITE_BUDGET,
) -> Report:
    """Every word of length ``<= max_length`` over ``gens x upper faces``
    evaluates like its normal form, and the normal form is ordered."""
    alphabet = [(h, F) for F in enumerate_faces(d, "upper") for h in G.generators]
    order = order_upper_faces(d)
    witnesses, checked = [], 0
    for length in range(max_length + 1):
        for letters in itertools.product(alphabet, repeat=length):
            word = FaceWord.of(d, letters)
            nf = normal_form(G, word, budget=rewrite_budget)
            checked += 1
            if [L.face for L in nf.letters] != order:
                witnesses.append(dict(word=word.render(G), error="order"))
            elif nf.evaluate(G) != word.evaluate(G):
                witnesses.append(dict(word=word.render(G), error="evaluation"))

    return Report.from_witnesses(
        "normal-form",
        witnesses,
        states_visited=checked,
        alphabet=len(alphabet),
        max_length=max_length,
    )


def verify_face_product_decomposition(
    G: FiniteGroup, d: int, *, budget: int = DEFAULT_TUPLE_BUDGET
) -> Report:
    """Experimental: ``|HK^[d]| = prod_S |G_codim(S)|`` over upper faces ``S``.

    Also checks that each upper face subgroup ``[G_codim(S)]_S`` lies in
    ``HK^[d]``. Reported, never relied upon.
    """
    hk = generated_tuple_group(G, d, "hk", budget=budget)
    expected, witnesses = 1, []
    for S in order_upper_faces(d):
        term = lower_central_term(G, S.codim)
        expected *= term.order
        rows = np.array([face_generator(G, h, S).entries for h in term])
        bad = np.flatnonzero(~hk.contains_rows(rows))
        witnesses += [dict(face=str(S), element=int(term.members[k])) for k in bad]

    if expected != hk.size:
        witnesses.append(dict(expected=expected, actual=hk.size))

    report = Report.from_witnesses(
        "face-product-decomposition",
        witnesses,
        states_visited=hk.size,
        expected=expected,
        hk_size=hk.size,
        experimental=True,
    )
    return report


def commutator_face(G: FiniteGroup, g: int, h: int, F1: Face, F2: Face) -> TupleElement:
    """``[[g, h]]_{F1 ∩ F2}``; the right hand side of the key identity."""
    meet = F1.intersect(F2)
    if meet is None:
        return TupleElement.identity(G, F1.d)
    return face_generator(G, commutator(G, g, h), meet)
