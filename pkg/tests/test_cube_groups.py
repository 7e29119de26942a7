# =========================================================================== #
import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

# --------------------------------------------------------------------------- #
from hkcubes import zoo
from hkcubes.cube_groups import (
    FaceWord,
    TupleElement,
    ceiling_hom,
    commutator_face,
    face_generator,
    face_generators,
    face_group_ceiling_image,
    face_word_for,
    factor_hk,
    floor_hom,
    generated_tuple_group,
    hk_generators,
    normal_form,
    pure_ceiling_mixed_decompose,
    tuple_commutator,
    tuple_group_membership,
    tuple_mul,
    verify_decomposition,
    verify_doubling_inclusion,
    verify_face_group_vertex_zero,
    verify_face_inclusion,
    verify_face_product_decomposition,
    verify_factor_hk,
    verify_hk_presentations,
    verify_key_commutator,
    verify_normal_form,
)
from hkcubes.cubes import Face, enumerate_faces, order_upper_faces
from hkcubes.errors import DimensionMismatch, InvalidLetter, NotMember
from hkcubes.groups import FiniteGroup

SYM3 = zoo.symmetric_group(3)
FACES_2 = enumerate_faces(2)


class TestTupleGroups:
    def test_sizes_z2(self, Z2: FiniteGroup):
        assert generated_tuple_group(Z2, 1).size == 4
        assert generated_tuple_group(Z2, 2).size == 8
        assert generated_tuple_group(Z2, 2, "face").size == 4

    def test_sizes_s3(self, S3: FiniteGroup):
        assert generated_tuple_group(S3, 1).size == 36
        hk = generated_tuple_group(S3, 2)
        assert hk.size == 648
        assert generated_tuple_group(S3, 2, "face").size == 108
        assert generated_tuple_group(S3, 2) is hk, "Tuple groups are cached."

    def test_membership(self, Z2: FiniteGroup):
        # ``a + d = b + c`` cuts out HK^[2] of an abelian group.
        assert tuple_group_membership(Z2, TupleElement.of([0, 1, 1, 0]))
        assert tuple_group_membership(Z2, TupleElement.of([1, 1, 1, 1]))
        assert not tuple_group_membership(Z2, TupleElement.of([0, 0, 0, 1]))
        assert not tuple_group_membership(Z2, TupleElement.of([1, 1, 1, 1]), "face")

        with pytest.raises(NotMember):
            factor_hk(Z2, TupleElement.of([0, 0, 0, 1]))

    def test_generators(self, S3: FiniteGroup):
        n_gens = len(S3.generators)
        assert len(face_generators(S3, 2)) == 2 * n_gens
        assert len(hk_generators(S3, 2)) == 3 * n_gens
        assert len(hk_generators(S3, 2, presentation="hyperfaces")) == 4 * n_gens

        for g in hk_generators(S3, 2, presentation="hyperfaces"):
            assert tuple_group_membership(S3, g)
        for g in face_generators(S3, 2):
            assert g.entries[0] == S3.identity
            assert tuple_group_membership(S3, g, "face")

    def test_tuple_arithmetic(self, S3: FiniteGroup):
        a = TupleElement.of([1, 2, 0, 1])
        with pytest.raises(DimensionMismatch):
            tuple_mul(S3, a, TupleElement.of([1, 2]))
        with pytest.raises(NotMember):
            tuple_mul(S3, a, TupleElement.of([0, 0, 0, 9]))

        assert ceiling_hom(a).entries == (0, 1)
        assert floor_hom(a).entries == (1, 2)

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_presentations(self, Z2: FiniteGroup, d: int):
        assert verify_hk_presentations(Z2, d).passed

    def test_presentations_s3(self, S3: FiniteGroup):
        report = verify_hk_presentations(S3, 2)
        assert report.passed
        assert report.details["size"] == 648

    def test_face_group(self, S3: FiniteGroup):
        assert verify_face_group_vertex_zero(S3, 2).passed
        assert verify_face_inclusion(S3, 2).passed

    def test_ceiling_image(self, Z4: FiniteGroup, S3: FiniteGroup):
        report = face_group_ceiling_image(Z4, 2)
        assert report.passed
        assert report.details["image_size"] == 16

        assert face_group_ceiling_image(S3, 2).details["image_size"] == 36


class TestAlgebra:
    def test_key_commutator(self, S3: FiniteGroup):
        report = verify_key_commutator(S3, 2)
        assert report.passed
        assert report.exhaustive

    def test_factor_hk(self, S3: FiniteGroup):
        report = verify_factor_hk(S3, 2)
        assert report.passed
        assert report.exhaustive
        assert report.states_visited == 648

        g = TupleElement.of([1, 1, 2, 2])
        f, t = factor_hk(S3, g)
        assert t == 1
        assert f.entries[0] == S3.identity
        assert tuple_mul(S3, f, TupleElement.diagonal(t, 2)) == g

    def test_normal_form(self, S3: FiniteGroup):
        report = verify_normal_form(S3, 2, max_length=4)
        assert report.passed
        assert report.details["alphabet"] == 4 * len(S3.generators)

    def test_normal_form_words(self, S3: FiniteGroup):
        g, h = S3.generators[:2]
        word = FaceWord.of(
            2,
            [(g, Face.full(2)), (h, Face.hyperface(2, 1, 1)), (g, Face.point(2, 3))],
        )
        nf = normal_form(S3, word)
        assert [L.face for L in nf.letters] == order_upper_faces(2)
        assert nf.evaluate(S3) == word.evaluate(S3)

        assert normal_form(S3, FaceWord(d=2)).evaluate(S3) == TupleElement.identity(S3, 2)
        assert FaceWord(d=2).render(S3) == "Id"

        with pytest.raises(InvalidLetter):
            normal_form(S3, FaceWord.of(2, [(g, Face.hyperface(2, 1, 0))]))

    def test_face_words(self, S3: FiniteGroup):
        face = generated_tuple_group(S3, 2, "face")
        for f in itertools.islice(face.elements(), 0, None, 17):
            assert face_word_for(S3, f).evaluate(S3) == f

        with pytest.raises(NotMember):
            face_word_for(S3, TupleElement.of([1, 0, 0, 0]))

    @pytest.mark.parametrize("group", ["Z2", "S3"])
    def test_doubling_inclusion(self, group: str, request: pytest.FixtureRequest):
        G = request.getfixturevalue(group)
        report = verify_doubling_inclusion(G, 1)
        assert report.passed
        assert report.exhaustive

    def test_decomposition(self, S3: FiniteGroup):
        report = verify_decomposition(S3, 2)
        assert report.passed
        assert report.exhaustive
        assert report.states_visited == 648

        g = TupleElement.of([1, 1, 2, 2])
        h, s = pure_ceiling_mixed_decompose(S3, g)
        assert h.d == s.d == 1
        id_h = TupleElement(d=2, entries=(S3.identity,) * 2 + h.entries)
        assert tuple_mul(S3, id_h, TupleElement(d=2, entries=s.entries * 2)) == g

    def test_face_product(self, S3: FiniteGroup):
        report = verify_face_product_decomposition(S3, 2)
        assert report.passed
        assert report.details["expected"] == 648

    def test_face_product_heisenberg(self):
        heis2 = zoo.heisenberg_group(2)
        report = verify_face_product_decomposition(heis2, 2)
        assert report.passed
        assert report.details["expected"] == 8 * 8 * 8 * 2


@given(
    g=st.integers(0, SYM3.order - 1),
    h=st.integers(0, SYM3.order - 1),
    F1=st.sampled_from(FACES_2),
    F2=st.sampled_from(FACES_2),
)
def test_key_commutator_property(g: int, h: int, F1: Face, F2: Face):
    lhs = tuple_commutator(
        SYM3, face_generator(SYM3, g, F1), face_generator(SYM3, h, F2)
    )
    assert lhs == commutator_face(SYM3, g, h, F1, F2)
