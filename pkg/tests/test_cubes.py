# =========================================================================== #
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

# --------------------------------------------------------------------------- #
from hkcubes.cubes import (
    Configuration,
    CubeMorphism,
    Face,
    Vertex,
    apply_morphism,
    corner,
    double,
    doubling_morphism,
    enumerate_faces,
    enumerate_morphisms,
    face_contains,
    face_preimage,
    join_floor_ceiling,
    order_upper_faces,
    split_floor_ceiling,
    subcube_below,
    vertex_count,
)
from hkcubes.errors import DimensionMismatch, InvalidDimension, InvalidIndex


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_face_counts(d: int):
    assert len(enumerate_faces(d)) == 3**d
    assert len(enumerate_faces(d, "upper")) == 2**d
    assert len(enumerate_faces(d, "lower")) == 2**d
    assert len(enumerate_faces(d, "hyperface")) == 2 * d
    assert len(enumerate_faces(d, "upper_hyperface")) == d
    assert len(enumerate_faces(d, "pure_ceiling")) == 2 ** (d - 1)
    assert len(enumerate_faces(d, "mixed")) == 2 ** (d - 1)


def test_face_errors():
    with pytest.raises(InvalidDimension):
        enumerate_faces(0)
    with pytest.raises(InvalidDimension):
        vertex_count(-1)
    with pytest.raises(InvalidIndex):
        enumerate_faces(2, "sideways")  # type: ignore[arg-type]
    with pytest.raises(ValidationError):
        Face(d=2, constrained=((3, 1),))
    with pytest.raises(ValidationError):
        Face(d=2, constrained=((1, 1), (1, 0)))
    with pytest.raises(ValidationError):
        Vertex(d=2, bits=4)


def test_face_geometry():
    F = Face.hyperface(2, 1, 1)
    assert F.vertices().tolist() == [1, 3]
    assert F.mask().tolist() == [False, True, False, True]
    assert F.is_upper and F.is_mixed and not F.is_pure_ceiling
    assert Face.hyperface(2, 2, 1).is_pure_ceiling

    assert F.intersect(Face.hyperface(2, 1, 0)) is None
    point = F.intersect(Face.hyperface(2, 2, 1))
    assert point == Face.point(2, 3)
    assert point is not None and point.issubset(F)
    assert not F.issubset(point)
    assert str(point) == "{11}"
    assert str(Vertex.from_coords([1, 0, 1])) == "101"

    assert face_contains(F, Vertex(d=2, bits=3))
    assert not face_contains(F, Vertex(d=2, bits=2))
    assert Face.upper(3, [1, 2]).dim == 1
    with pytest.raises(DimensionMismatch):
        face_contains(F, Vertex(d=3, bits=1))


def test_order_upper_faces():
    ordered = order_upper_faces(2)
    assert ordered == [
        Face.point(2, 3),
        Face.hyperface(2, 2, 1),
        Face.hyperface(2, 1, 1),
        Face.full(2),
    ]

    # Every face is listed after all of its proper upper subfaces.
    for d in (2, 3):
        ordered = order_upper_faces(d)
        for k, F in enumerate(ordered):
            later = ordered[k + 1 :]
            assert not any(G.issubset(F) and G != F for G in later)


def test_morphisms():
    assert len(list(enumerate_morphisms(1, 1))) == 4
    assert len(list(enumerate_morphisms(2, 2))) == 36

    neg = CubeMorphism.negation(2)
    assert neg.table().tolist() == [3, 2, 1, 0]
    assert neg.compose(neg) == CubeMorphism.identity(2)
    assert CubeMorphism.constant(2, 2, bits=1).table().tolist() == [1, 1, 1, 1]

    with pytest.raises(DimensionMismatch):
        neg.compose(CubeMorphism.identity(3))
    with pytest.raises(ValidationError):
        CubeMorphism(r=1, d=1, coords=(("proj", 2),))


def _morphisms(r: int, d: int):
    choices = [("zero", 0), ("one", 0)]
    choices += [(kind, i) for i in range(1, r + 1) for kind in ("proj", "neg")]
    return st.lists(st.sampled_from(choices), min_size=d, max_size=d).map(
        lambda coords: CubeMorphism(r=r, d=d, coords=tuple(coords))
    )


@given(data=st.data())
def test_compose_matches_tables(data):
    r, m, d = data.draw(st.tuples(*(st.integers(0, 3),) * 3))
    g = data.draw(_morphisms(r, m))
    f = data.draw(_morphisms(m, d))

    composed = f.compose(g)
    assert np.array_equal(composed.table(), f.table()[g.table()])
    for bits in range(vertex_count(r)):
        assert composed(bits) == f(g(bits))


def test_doubling():
    assert double(Configuration.of([7, 9]), 1).vals == (7, 7, 9, 9)
    assert double(Configuration.of([7, 9]), 2).vals == (7, 9, 7, 9)
    assert doubling_morphism(1, 1).table().tolist() == [0, 0, 1, 1]

    with pytest.raises(InvalidIndex):
        doubling_morphism(3, 1)


def test_face_preimage():
    F = Face.hyperface(1, 1, 1)
    assert face_preimage(F, doubling_morphism(1, 1)) == Face.hyperface(2, 2, 1)

    const = CubeMorphism.constant(1, 1, bits=0)
    assert face_preimage(F, const) is None
    assert face_preimage(Face.hyperface(1, 1, 0), const) == Face.full(1)

    # Both target coordinates read the same source coordinate.
    diag = CubeMorphism(r=1, d=2, coords=(("proj", 1), ("neg", 1)))
    assert face_preimage(Face.point(2, 3), diag) is None
    assert face_preimage(Face.point(2, 1), diag) == Face.point(1, 1)


def test_subcube_below():
    assert subcube_below(5).tolist() == [0, 1, 4, 5]
    assert subcube_below(0).tolist() == [0]
    assert subcube_below(7).tolist() == list(range(8))


def test_configurations():
    with pytest.raises(DimensionMismatch):
        Configuration.of([1, 2, 3])
    with pytest.raises(ValidationError):
        Configuration(d=1, vals=(1,))

    assert corner(0, 1, 2).vals == (0, 0, 0, 1)
    assert corner(0, 1, 2, "upper").vals == (0, 1, 1, 1)
    with pytest.raises(InvalidDimension):
        corner(0, 1, 0)

    c = Configuration.of([0, 1, 2, 3, 4, 5, 6, 7])
    floor, ceiling = split_floor_ceiling(c)
    assert floor.vals == (0, 1, 2, 3)
    assert ceiling.vals == (4, 5, 6, 7)
    assert join_floor_ceiling(floor, ceiling) == c

    swapped = apply_morphism(c, CubeMorphism.negation(3))
    assert swapped.vals == (7, 6, 5, 4, 3, 2, 1, 0)
    with pytest.raises(DimensionMismatch):
        apply_morphism(c, CubeMorphism.identity(2))
