"""Discrete cubes ``{0,1}^d``: vertices, faces, morphisms and configurations.

A vertex is an integer whose bit ``i`` is the coordinate ``ω_{i+1}``, so the
last coordinate is the top bit and the floor/ceiling split is a mask on it.
Configurations list their values in increasing vertex order, i.e. for
``d = 2`` the order is ``00, 10, 01, 11`` written as ``ω_1 ω_2``.
"""

# =========================================================================== #
import itertools
from typing import Annotated, Iterator, List, Literal, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# --------------------------------------------------------------------------- #
from hkcubes.errors import DimensionMismatch, InvalidDimension, InvalidIndex

FaceFilter = Literal[
    "all",
    "upper",
    "lower",
    "hyperface",
    "upper_hyperface",
    "pure_ceiling",
    "mixed",
]
CoordKind = Literal["zero", "one", "proj", "neg"]


def vertex_count(d: int) -> int:
    if d < 0:
        raise InvalidDimension(f"Dimension `{d}` must be non-negative.")
    return 1 << d


def vertices(d: int) -> np.ndarray:
    return np.arange(vertex_count(d), dtype=np.int64)


def popcount(v: int) -> int:
    return int(v).bit_count()


class Vertex(BaseModel):
    model_config = ConfigDict(frozen=True)

    d: Annotated[int, Field(ge=0)]
    bits: Annotated[int, Field(ge=0)]

    @model_validator(mode="after")
    def check_range(self):
        if self.bits >= 1 << self.d:
            raise ValueError(f"Vertex bits `{self.bits}` out of range for d={self.d}.")
        return self

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "Vertex":
        bits = sum((int(c) & 1) << i for i, c in enumerate(coords))
        return cls(d=len(coords), bits=bits)

    @property
    def coords(self) -> Tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.d))

    def __str__(self) -> str:
        return "".join(str(c) for c in self.coords) or "()"


class Face(BaseModel):
    """A face of ``{0,1}^d``, cut out by fixing some coordinates.

    ``constrained`` holds ``(position, value)`` pairs with 1-based positions,
    kept sorted by position.
    """

    model_config = ConfigDict(frozen=True)

    d: Annotated[int, Field(ge=0)]
    constrained: Tuple[Tuple[int, int], ...] = ()

    @field_validator("constrained", mode="after")
    @classmethod
    def sort_constraints(cls, v):
        return tuple(sorted(v))

    @model_validator(mode="after")
    def check_constraints(self):
        positions = [i for i, _ in self.constrained]
        if len(set(positions)) != len(positions):
            raise ValueError("Face constraint positions must be distinct.")
        for i, a in self.constrained:
            if not 1 <= i <= self.d:
                raise ValueError(f"Constraint position `{i}` outside 1..{self.d}.")
            if a not in (0, 1):
                raise ValueError(f"Constraint value `{a}` must be 0 or 1.")
        return self

    # ----------------------------------------------------------------------- #

    @classmethod
    def full(cls, d: int) -> "Face":
        return cls(d=d)

    @classmethod
    def hyperface(cls, d: int, i: int, a: int = 1) -> "Face":
        return cls(d=d, constrained=((i, a),))

    @classmethod
    def upper(cls, d: int, positions: Sequence[int]) -> "Face":
        return cls(d=d, constrained=tuple((i, 1) for i in sorted(positions)))

    @classmethod
    def point(cls, d: int, bits: int) -> "Face":
        return cls(d=d, constrained=tuple((i + 1, (bits >> i) & 1) for i in range(d)))

    @property
    def codim(self) -> int:
        return len(self.constrained)

    @property
    def dim(self) -> int:
        return self.d - self.codim

    @property
    def is_upper(self) -> bool:
        return all(a == 1 for _, a in self.constrained)

    @property
    def is_lower(self) -> bool:
        return all(a == 0 for _, a in self.constrained)

    @property
    def is_hyperface(self) -> bool:
        return self.codim == 1

    @property
    def is_pure_ceiling(self) -> bool:
        return self.is_upper and (self.d, 1) in self.constrained

    @property
    def is_mixed(self) -> bool:
        return self.is_upper and not self.is_pure_ceiling

    @property
    def fixed_mask(self) -> int:
        return sum(1 << (i - 1) for i, _ in self.constrained)

    @property
    def fixed_value(self) -> int:
        return sum(a << (i - 1) for i, a in self.constrained)

    def contains_bits(self, bits: int) -> bool:
        return (bits & self.fixed_mask) == self.fixed_value

    def vertices(self) -> np.ndarray:
        """Vertices of the face in increasing order."""
        verts = vertices(self.d)
        return verts[(verts & self.fixed_mask) == self.fixed_value]

    def mask(self) -> np.ndarray:
        verts = vertices(self.d)
        return (verts & self.fixed_mask) == self.fixed_value

    def intersect(self, other: "Face") -> "Face | None":
        if self.d != other.d:
            raise DimensionMismatch(f"Faces of dimension {self.d} and {other.d}.")
        merged = dict(self.constrained)
        for i, a in other.constrained:
            if merged.get(i, a) != a:
                return None
            merged[i] = a
        return Face(d=self.d, constrained=tuple(sorted(merged.items())))

    def issubset(self, other: "Face") -> bool:
        return set(other.constrained) <= set(self.constrained)

    def __str__(self) -> str:
        if not self.constrained:
            return "{0,1}^%d" % self.d
        if self.codim == self.d:
            return "{%s}" % "".join(str(a) for _, a in self.constrained)
        return "{" + ",".join(f"ω{i}={a}" for i, a in self.constrained) + "}"


def face_contains(F: Face, v: Vertex) -> bool:
    if F.d != v.d:
        raise DimensionMismatch(f"Face of dimension {F.d}, vertex of dimension {v.d}.")
    return F.contains_bits(v.bits)


def _all_faces(d: int) -> Iterator[Face]:
    # NOTE: 0 free, 1 fixed at 0, 2 fixed at 1 per coordinate.
    for choice in itertools.product((0, 1, 2), repeat=d):
        yield Face(
            d=d,
            constrained=tuple(
                (i + 1, c - 1) for i, c in enumerate(choice) if c != 0
            ),
        )


def enumerate_faces(d: int, filter: FaceFilter = "all") -> List[Face]:
    """Faces of ``{0,1}^d`` ordered lexicographically on their constraints."""
    if d <= 0:
        raise InvalidDimension(f"Faces need `d >= 1`, got `{d}`.")

    match filter:
        case "all":
            keep = lambda F: True  # noqa: E731
        case "upper":
            keep = lambda F: F.is_upper  # noqa: E731
        case "lower":
            keep = lambda F: F.is_lower  # noqa: E731
        case "hyperface":
            keep = lambda F: F.is_hyperface  # noqa: E731
        case "upper_hyperface":
            keep = lambda F: F.is_hyperface and F.is_upper  # noqa: E731
        case "pure_ceiling":
            keep = lambda F: F.is_pure_ceiling  # noqa: E731
        case "mixed":
            keep = lambda F: F.is_mixed  # noqa: E731
        case bad:
            raise InvalidIndex(f"Unknown face filter `{bad}`.")

    return sorted((F for F in _all_faces(d) if keep(F)), key=lambda F: F.constrained)


def order_upper_faces(d: int) -> List[Face]:
    """Upper faces ordered from ``{1⃗}`` to ``{0,1}^d``.

    Pure ceiling faces come before mixed ones and, within each group, faces
    of larger codimension come first. Both rules refine inclusion since a
    subface of a mixed face may be pure ceiling but never the reverse.
    """
    return sorted(
        enumerate_faces(d, "upper"),
        key=lambda F: (F.is_mixed, -F.codim, F.constrained),
    )


# --------------------------------------------------------------------------- #


class CubeMorphism(BaseModel):
    """A morphism ``{0,1}^r -> {0,1}^d``.

    Each target coordinate is ``("zero", 0)``, ``("one", 0)``, ``("proj", i)``
    or ``("neg", i)`` for a source coordinate ``1 <= i <= r``.
    """

    model_config = ConfigDict(frozen=True)

    r: Annotated[int, Field(ge=0)]
    d: Annotated[int, Field(ge=0)]
    coords: Tuple[Tuple[CoordKind, int], ...]

    @model_validator(mode="after")
    def check_coords(self):
        if len(self.coords) != self.d:
            raise ValueError(f"Expected {self.d} coordinates, got {len(self.coords)}.")
        for kind, i in self.coords:
            if kind in ("proj", "neg") and not 1 <= i <= self.r:
                raise ValueError(f"Source index `{i}` outside 1..{self.r}.")
        return self

    @classmethod
    def identity(cls, d: int) -> "CubeMorphism":
        return cls(r=d, d=d, coords=tuple(("proj", i + 1) for i in range(d)))

    @classmethod
    def negation(cls, d: int) -> "CubeMorphism":
        return cls(r=d, d=d, coords=tuple(("neg", i + 1) for i in range(d)))

    @classmethod
    def constant(cls, r: int, d: int, bits: int = 0) -> "CubeMorphism":
        return cls(
            r=r,
            d=d,
            coords=tuple(("one" if (bits >> j) & 1 else "zero", 0) for j in range(d)),
        )

    def __call__(self, bits: int) -> int:
        out = 0
        for j, (kind, i) in enumerate(self.coords):
            match kind:
                case "zero":
                    bit = 0
                case "one":
                    bit = 1
                case "proj":
                    bit = (bits >> (i - 1)) & 1
                case _:
                    bit = 1 - ((bits >> (i - 1)) & 1)
            out |= bit << j
        return out

    def table(self) -> np.ndarray:
        """Image of every source vertex, indexed by source vertex."""
        src = vertices(self.r)
        out = np.zeros_like(src)
        for j, (kind, i) in enumerate(self.coords):
            match kind:
                case "zero":
                    continue
                case "one":
                    bit = np.ones_like(src)
                case "proj":
                    bit = (src >> (i - 1)) & 1
                case _:
                    bit = 1 - ((src >> (i - 1)) & 1)
            out |= bit << j
        return out

    def compose(self, other: "CubeMorphism") -> "CubeMorphism":
        """``self ∘ other``, i.e. apply ``other`` first."""
        if other.d != self.r:
            raise DimensionMismatch(
                f"Cannot compose {self.r}->{self.d} after {other.r}->{other.d}."
            )
        flip = {"zero": "one", "one": "zero", "proj": "neg", "neg": "proj"}
        coords: List[Tuple[CoordKind, int]] = []
        for kind, i in self.coords:
            if kind in ("zero", "one"):
                coords.append((kind, 0))
                continue
            inner_kind, inner_i = other.coords[i - 1]
            if kind == "neg":
                inner_kind = flip[inner_kind]  # type: ignore[assignment]
            coords.append((inner_kind, inner_i))  # type: ignore[arg-type]
        return CubeMorphism(r=other.r, d=self.d, coords=tuple(coords))


def doubling_morphism(i: int, d: int) -> CubeMorphism:
    """The map ``{0,1}^{d+1} -> {0,1}^d`` deleting coordinate ``i``."""
    if not 1 <= i <= d + 1:
        raise InvalidIndex(f"Doubling index `{i}` outside 1..{d + 1}.")
    coords = tuple(("proj", j if j < i else j + 1) for j in range(1, d + 1))
    return CubeMorphism(r=d + 1, d=d, coords=coords)  # type: ignore[arg-type]


def face_preimage(F: Face, f: CubeMorphism) -> Face | None:
    """``f^{-1}(F)`` as a face of the source cube, ``None`` when empty.

    Raises ``InvalidIndex`` when the preimage is not a face, which can only
    happen when ``f`` repeats a source coordinate under a constraint.
    """
    if F.d != f.d:
        raise DimensionMismatch(f"Face of dimension {F.d}, morphism into {f.d}.")

    constraints: dict[int, int] = {}
    for j, a in F.constrained:
        kind, i = f.coords[j - 1]
        match kind:
            case "zero" | "one":
                if (kind == "one") != bool(a):
                    return None
                continue
            case "proj":
                want = a
            case _:
                want = 1 - a
        if constraints.get(i, want) != want:
            return None
        constraints[i] = want

    face = Face(d=f.r, constrained=tuple(sorted(constraints.items())))
    expected = np.flatnonzero(F.mask()[f.table()])
    if not np.array_equal(face.vertices(), expected):
        raise InvalidIndex("Preimage of the face is not a face.")
    return face


def enumerate_morphisms(r: int, d: int) -> Iterator[CubeMorphism]:
    """Every morphism ``{0,1}^r -> {0,1}^d``, ``(2r + 2)^d`` of them."""
    choices: List[Tuple[CoordKind, int]] = [("zero", 0), ("one", 0)]
    for i in range(1, r + 1):
        choices += [("proj", i), ("neg", i)]
    for coords in itertools.product(choices, repeat=d):
        yield CubeMorphism(r=r, d=d, coords=coords)


def subcube_below(bits: int) -> np.ndarray:
    """Vertices ``ω' ⊆ ω`` in increasing order.

    Listed this way they are exactly the vertices of a ``popcount(ω)``
    dimensional configuration, since increasing order is preserved by
    compressing the set bits of ``ω``.
    """
    positions = [i for i in range(bits.bit_length()) if (bits >> i) & 1]
    out = []
    for k in range(1 << len(positions)):
        out.append(sum(1 << p for t, p in enumerate(positions) if (k >> t) & 1))
    return np.array(out, dtype=np.int64)


# --------------------------------------------------------------------------- #


class Configuration(BaseModel):
    """Values of a map ``{0,1}^d -> X`` in increasing vertex order."""

    model_config = ConfigDict(frozen=True)

    d: Annotated[int, Field(ge=0)]
    vals: Tuple[int, ...]

    @model_validator(mode="after")
    def check_length(self):
        if len(self.vals) != 1 << self.d:
            raise ValueError(
                f"Configuration of dimension {self.d} needs {1 << self.d} values, "
                f"got {len(self.vals)}."
            )
        if any(v < 0 for v in self.vals):
            raise ValueError("Configuration values must be non-negative indices.")
        return self

    @classmethod
    def of(cls, vals: Sequence[int]) -> "Configuration":
        n = len(vals)
        if n == 0 or n & (n - 1):
            raise DimensionMismatch(f"Length `{n}` is not a power of two.")
        return cls(d=n.bit_length() - 1, vals=tuple(int(v) for v in vals))

    @classmethod
    def constant(cls, x: int, d: int) -> "Configuration":
        return cls(d=d, vals=(int(x),) * vertex_count(d))

    def __getitem__(self, v: int) -> int:
        return self.vals[v]

    def __len__(self) -> int:
        return len(self.vals)

    def array(self) -> np.ndarray:
        return np.array(self.vals, dtype=np.int64)


def apply_morphism(c: Configuration, f: CubeMorphism) -> Configuration:
    if c.d != f.d:
        raise DimensionMismatch(
            f"Configuration of dimension {c.d}, morphism into dimension {f.d}."
        )
    return Configuration(d=f.r, vals=tuple(c.vals[t] for t in f.table()))


def double(c: Configuration, i: int) -> Configuration:
    return apply_morphism(c, doubling_morphism(i, c.d))


def corner(x: int, y: int, d: int, kind: Literal["lower", "upper"] = "lower") -> Configuration:
    """Lower corner: ``x`` everywhere but ``y`` at ``1⃗``. Upper: ``x`` only at ``0⃗``."""
    if d < 1:
        raise InvalidDimension(f"Corners need `d >= 1`, got `{d}`.")
    n = vertex_count(d)
    if kind == "lower":
        vals = (x,) * (n - 1) + (y,)
    elif kind == "upper":
        vals = (x,) + (y,) * (n - 1)
    else:
        raise InvalidIndex(f"Unknown corner kind `{kind}`.")
    return Configuration(d=d, vals=tuple(int(v) for v in vals))


def split_floor_ceiling(c: Configuration) -> Tuple[Configuration, Configuration]:
    if c.d < 1:
        raise InvalidDimension("Cannot split a 0-dimensional configuration.")
    half = 1 << (c.d - 1)
    return (
        Configuration(d=c.d - 1, vals=c.vals[:half]),
        Configuration(d=c.d - 1, vals=c.vals[half:]),
    )


def join_floor_ceiling(floor: Configuration, ceiling: Configuration) -> Configuration:
    if floor.d != ceiling.d:
        raise DimensionMismatch(f"Floor of dimension {floor.d}, ceiling {ceiling.d}.")
    return Configuration(d=floor.d + 1, vals=floor.vals + ceiling.vals)
