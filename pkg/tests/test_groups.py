# =========================================================================== #
import pytest
from hypothesis import given
from hypothesis import strategies as st

# --------------------------------------------------------------------------- #
from hkcubes import zoo
from hkcubes.errors import InvalidElement, InvalidParameter, NotNormal
from hkcubes.groups import (
    FiniteGroup,
    abelian_invariants,
    abelianization,
    commutator,
    commutator_subgroup,
    cycle_notation,
    generate_subgroup,
    is_normal,
    is_perfect,
    lower_central_series,
    lower_central_term,
    nilpotency_class,
    quotient_group,
)

HEIS3 = zoo.heisenberg_group(3)


def test_table_validation():
    with pytest.raises(InvalidElement):
        FiniteGroup([[0, 1], [1, 2]])

    with pytest.raises(InvalidParameter):
        FiniteGroup([[0, 1], [0, 1]])

    with pytest.raises(InvalidParameter):
        FiniteGroup([[0, 1, 2], [1, 2, 0]])

    with pytest.raises(InvalidParameter):
        FiniteGroup(zoo.cyclic_group(4).mult, max_order=2)


def test_cyclic(Z4: FiniteGroup):
    assert Z4.order == 4
    assert Z4.is_abelian
    assert Z4.element_orders.tolist() == [1, 4, 2, 4]
    assert Z4.inverse(1) == 3
    assert nilpotency_class(Z4) == 1

    with pytest.raises(InvalidElement):
        Z4.validate(4)
    with pytest.raises(InvalidElement):
        Z4.validate(True)


def test_generate_subgroup(S3: FiniteGroup):
    three_cycle = next(g for g in S3.elements() if S3.element_order(g) == 3)
    transposition = next(g for g in S3.elements() if S3.element_order(g) == 2)

    assert generate_subgroup(S3, [three_cycle]).order == 3
    assert generate_subgroup(S3, [transposition, three_cycle]).order == 6
    assert generate_subgroup(S3, []).is_trivial()


def test_lower_central_series(S3: FiniteGroup):
    assert [s.order for s in lower_central_series(S3)] == [6, 3]
    assert lower_central_term(S3, 3).order == 3, "The stable term repeats."
    assert lower_central_term(S3, 0).order == 6
    assert nilpotency_class(S3) is None

    heis2 = zoo.heisenberg_group(2)
    assert [s.order for s in lower_central_series(heis2)] == [8, 2, 1]
    assert nilpotency_class(heis2) == 2

    with pytest.raises(InvalidParameter):
        lower_central_term(S3, -1)


def test_permutation_labels(S3: FiniteGroup):
    assert S3.label(S3.identity) == "()"
    assert cycle_notation([1, 0, 2]) == "(1 2)"
    assert cycle_notation([1, 2, 0]) == "(1 2 3)"
    assert S3.permutation(0) == (0, 1, 2)


def test_quotients(S3: FiniteGroup):
    ab, qmap = abelianization(S3)
    assert ab.order == 2
    assert qmap.shape == (6,)

    assert abelianization(HEIS3)[0].order == 9

    transposition = next(g for g in S3.elements() if S3.element_order(g) == 2)
    H = generate_subgroup(S3, [transposition])
    assert not is_normal(S3, H)
    with pytest.raises(NotNormal):
        quotient_group(S3, H)

    heis2 = zoo.heisenberg_group(2)
    center = lower_central_term(heis2, 2)
    Q, _ = quotient_group(heis2, center)
    assert Q.order == 4
    assert Q.is_abelian


def test_perfect():
    A5 = zoo.alternating_group(5)
    assert A5.order == 60
    assert is_perfect(A5)
    assert nilpotency_class(A5) is None
    assert not is_perfect(zoo.symmetric_group(3))


def test_abelian_invariants():
    info = abelian_invariants(zoo.direct_product(zoo.cyclic_group(2), zoo.cyclic_group(2)))
    assert info["order"] == 4
    assert info["exponent"] == 2
    assert info["element_orders"] == [1, 2, 2, 2]


def test_dihedral():
    D4 = zoo.dihedral_group(4)
    assert D4.order == 8
    assert nilpotency_class(D4) == 2
    assert nilpotency_class(zoo.dihedral_group(3)) is None


@given(
    g=st.integers(0, HEIS3.order - 1),
    h=st.integers(0, HEIS3.order - 1),
)
def test_commutator_identities(g: int, h: int):
    c = commutator(HEIS3, g, h)
    assert HEIS3.inverse(c) == commutator(HEIS3, h, g)
    assert c in commutator_subgroup(HEIS3)
    # Class two: commutators are central.
    assert all(HEIS3.mul(c, k) == HEIS3.mul(k, c) for k in HEIS3.elements())
