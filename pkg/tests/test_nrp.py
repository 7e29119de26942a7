# =========================================================================== #
import pytest

# --------------------------------------------------------------------------- #
from hkcubes import oracle, zoo
from hkcubes.errors import BudgetExceeded, InvalidDimension, NotApplicable
from hkcubes.groups import abelianization, lower_central_term, quotient_group
from hkcubes.nrp import (
    canonical_relation,
    check_canonical,
    check_rp_subset_nrp,
    distal_from_order,
    elementary_chain_check,
    nrp_relation,
    q_relations_chain,
    rp_relation,
    upper_corner_relation,
    verify_alt_corner,
    verify_equivalence,
    verify_lifting,
    weakly_mixing_checks,
)
from hkcubes.systems import FiniteSystem, Relation, quotient_system


@pytest.mark.parametrize("n", range(2, 9))
@pytest.mark.parametrize("d", [1, 2])
def test_abelian_rotations_are_trivial(n: int, d: int):
    sys = zoo.rotation(n)
    assert nrp_relation(sys, d).is_diagonal
    assert rp_relation(sys, d).is_diagonal


def test_order_zero_is_full(s3_regular: FiniteSystem):
    assert nrp_relation(s3_regular, 0).is_full
    with pytest.raises(InvalidDimension):
        nrp_relation(s3_regular, -1)


class TestHeisenberg:
    def test_nrp_classes(self, heis2: FiniteSystem):
        R = nrp_relation(heis2, 1)
        assert not R.is_diagonal
        classes = R.classes()
        assert len(classes) == 4
        assert all(len(c) == 2 for c in classes)

        center = lower_central_term(heis2.group, 2)
        cosets = Relation.from_labels(quotient_group(heis2.group, center)[1])
        assert R == cosets

        assert nrp_relation(heis2, 2).is_diagonal

    def test_equivalence(self, heis2: FiniteSystem):
        for d in (1, 2):
            report = verify_equivalence(nrp_relation(heis2, d), heis2)
            assert report.passed

    def test_not_an_equivalence(self, rotation4: FiniteSystem):
        report = verify_equivalence(Relation.from_pairs(4, [(0, 1), (1, 2)]), rotation4)
        assert not report.passed
        failed = {w["property"] for w in report.witnesses}
        assert {"reflexive", "symmetric", "transitive", "invariant"} <= failed

    def test_lifting(self, heis2: FiniteSystem):
        G = heis2.group
        for Q, qmap in (
            quotient_group(G, lower_central_term(G, 2)),
            abelianization(G),
        ):
            target, pi = quotient_system(heis2, Relation.from_labels(qmap))
            assert target.points == Q.order
            for d in (1, 2):
                assert verify_lifting(pi, d).passed, (Q.name, d)

    @pytest.mark.slow
    def test_heisenberg_three(self, heis3: FiniteSystem):
        R = nrp_relation(heis3, 1)
        assert len(R.classes()) == 9
        assert all(len(c) == 3 for c in R.classes())
        assert nrp_relation(heis3, 2).is_diagonal


def test_nrp_is_equivalence_on_minimal(small_minimal):
    for sys in small_minimal:
        for d in (1, 2):
            assert verify_equivalence(nrp_relation(sys, d), sys).passed, (sys.name, d)
            assert verify_alt_corner(sys, d).passed, (sys.name, d)


def test_canonical_matches_nrp(small_minimal):
    for sys in small_minimal:
        for d in (1, 2):
            assert canonical_relation(sys, d) == nrp_relation(sys, d), (sys.name, d)
            assert check_canonical(sys, d).passed


def test_oracles(small_minimal):
    for sys in small_minimal[:4]:
        for d in (1, 2):
            computed = nrp_relation(sys, d)
            assert oracle.diff("nrp", computed, oracle.nrp_by_membership(sys, d)).passed
            assert oracle.diff(
                "canonical", canonical_relation(sys, d), oracle.canonical_by_scan(sys, d)
            ).passed
            assert oracle.diff("rp", rp_relation(sys, d), oracle.rp_by_pairs(sys, d)).passed


def test_face_group_oracle(S3, Z2):
    assert len(oracle.face_group_fixpoint(S3, 2)) == 108
    assert len(oracle.face_group_fixpoint(Z2, 2)) == 4
    assert all(f[0] == S3.identity for f in oracle.face_group_fixpoint(S3, 2))
    with pytest.raises(InvalidDimension):
        oracle.rp_by_pairs(zoo.rotation(3), 0)


def test_upper_corner(s3_natural: FiniteSystem):
    for d in (1, 2):
        assert upper_corner_relation(s3_natural, d) == nrp_relation(s3_natural, d)


class TestChains:
    @pytest.mark.parametrize("name", ["s3_regular", "heis2"])
    def test_elementary_chain(self, name: str, request: pytest.FixtureRequest):
        sys = request.getfixturevalue(name)
        report = elementary_chain_check(sys, 2, rp=True)
        assert report.passed
        assert q_relations_chain(sys).passed

    def test_chain_classes(self, heis2: FiniteSystem, s3_regular: FiniteSystem):
        assert elementary_chain_check(heis2, 2).details["nrp_classes"] == {"1": 4, "2": 8}
        assert elementary_chain_check(s3_regular, 1).details["nrp_classes"] == {"1": 2}

    def test_chain_needs_dimension(self, heis2: FiniteSystem):
        with pytest.raises(InvalidDimension):
            elementary_chain_check(heis2, 0)


class TestRP:
    def test_rp_trivial(self, heis2: FiniteSystem, s3_regular: FiniteSystem):
        assert rp_relation(heis2, 1).is_diagonal
        assert rp_relation(s3_regular, 1).is_diagonal

    def test_rp_subset(self, small_minimal):
        for sys in small_minimal:
            assert check_rp_subset_nrp(sys, 1).passed, sys.name

    def test_rp_errors(self, heis2: FiniteSystem):
        with pytest.raises(InvalidDimension):
            rp_relation(heis2, 0)
        with pytest.raises(BudgetExceeded):
            rp_relation(heis2, 2, budget=10)


class TestWeaklyMixing:
    def test_not_applicable(self, rotation4: FiniteSystem):
        with pytest.raises(NotApplicable):
            weakly_mixing_checks(rotation4, 1)

    def test_single_point(self):
        point = FiniteSystem(zoo.cyclic_group(2), [[0], [0]], name="point")
        assert weakly_mixing_checks(point, 2).passed
        assert nrp_relation(point, 1).is_full


def test_distal_from_order(rotation4: FiniteSystem, s3_regular: FiniteSystem):
    assert distal_from_order(rotation4, 1).passed
    assert distal_from_order(s3_regular, 1).status == "not-applicable"


@pytest.mark.slow
def test_a5_dichotomy(a5: FiniteSystem):
    assert nrp_relation(a5, 1).is_full
    assert len(nrp_relation(a5, 1).classes()) == 1
    assert rp_relation(a5, 1).is_diagonal
    assert check_rp_subset_nrp(a5, 1).details["strict"]
