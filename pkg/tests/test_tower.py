# =========================================================================== #
import pytest

# --------------------------------------------------------------------------- #
from hkcubes import zoo
from hkcubes.errors import InvalidDimension, InvalidParameter, NotMinimal, TargetNotOrderD
from hkcubes.groups import abelianization
from hkcubes.systems import FactorMap, FiniteSystem, Relation, quotient_system
from hkcubes.tower import (
    effective_nilpotent_quotient,
    factor_tower,
    order_of_system,
    quotient_by_nrp,
    skipped_orders,
    structure_group,
    verify_order_of_factor,
)


class TestOrder:
    def test_orders(self, rotation4: FiniteSystem, heis2: FiniteSystem, s3_regular: FiniteSystem):
        assert order_of_system(rotation4) == 1
        assert order_of_system(heis2) == 2
        assert order_of_system(zoo.dihedral(4)) == 2
        assert order_of_system(s3_regular) is None
        assert order_of_system(heis2, 1) is None

    def test_skipped_orders(
        self, rotation4: FiniteSystem, heis2: FiniteSystem, s3_regular: FiniteSystem
    ):
        assert skipped_orders(rotation4, 3) == []
        assert skipped_orders(heis2, 3) == [1]
        assert skipped_orders(s3_regular, 3) == [1, 2, 3]

    def test_single_point(self):
        point = FiniteSystem(zoo.cyclic_group(3), [[0], [0], [0]])
        assert order_of_system(point) == 0

    def test_not_minimal(self, Z2):
        shift = FiniteSystem(Z2, [[0, 1, 2, 3], [2, 3, 0, 1]])
        with pytest.raises(NotMinimal):
            order_of_system(shift)

    @pytest.mark.slow
    def test_heisenberg_three(self, heis3: FiniteSystem):
        assert order_of_system(heis3) == 2


class TestMaximalFactor:
    def test_quotient_by_nrp(self, heis2: FiniteSystem):
        Y, pi = quotient_by_nrp(heis2, 1)
        assert Y.points == 4
        assert pi.map.max() == 3

        point, _ = quotient_by_nrp(heis2, 0)
        assert point.points == 1

    @pytest.mark.parametrize("d", [1, 2])
    def test_order_of_factor(self, heis2: FiniteSystem, s3_regular: FiniteSystem, d: int):
        assert verify_order_of_factor(heis2, d).passed
        assert verify_order_of_factor(s3_regular, d).passed

    def test_factor_through(self, heis2: FiniteSystem):
        _, qmap = abelianization(heis2.group)
        target, pi = quotient_system(heis2, Relation.from_labels(qmap))
        report = verify_order_of_factor(heis2, 1, pi)
        assert report.passed
        assert report.details["quotient_size"] == 4

        with pytest.raises(TargetNotOrderD):
            verify_order_of_factor(heis2, 1, FactorMap.identity(heis2))


class TestStructure:
    def test_effective_quotient(self, heis2: FiniteSystem, rotation4: FiniteSystem):
        effective = effective_nilpotent_quotient(heis2, 2)
        assert effective.group.order == 8
        assert effective.nilpotency_class == 2

        abelian = effective_nilpotent_quotient(rotation4, 1)
        assert abelian.nilpotency_class == 1

        with pytest.raises(InvalidParameter):
            effective_nilpotent_quotient(heis2, 1)

    def test_structure_group(self, heis2: FiniteSystem):
        K = structure_group(heis2, 2)
        assert K.group.order == 2
        assert all(K.properties.values()), K.properties

        Y, _ = quotient_by_nrp(heis2, 1)
        K1 = structure_group(Y, 1)
        assert K1.group.order == 4
        assert K1.group.is_abelian

        with pytest.raises(InvalidDimension):
            structure_group(heis2, 0)


class TestTower:
    def test_heisenberg(self, heis2: FiniteSystem):
        tower = factor_tower(heis2)
        assert tower.status == "complete"
        assert tower.order == 2
        assert [(L.level, L.size, L.target_size, L.K_order) for L in tower.levels] == [
            (2, 8, 4, 2),
            (1, 4, 1, 4),
        ]
        assert all(L.K_abelian and L.free and L.orbits_are_fibres for L in tower.levels)
        assert tower.abelian_factor
        assert tower.projections_compose

    def test_rotation(self, rotation4: FiniteSystem):
        tower = factor_tower(rotation4)
        assert [L.K_order for L in tower.levels] == [4]
        assert tower.levels[0].element_orders == [1, 2, 4, 4]

    def test_truncated(self, s3_regular: FiniteSystem):
        tower = factor_tower(s3_regular, 2)
        assert tower.status == "truncated"
        assert tower.order is None
        assert tower.levels == []

    def test_product(self):
        product = zoo.product_of([zoo.rotation(2), zoo.rotation(3)])
        tower = factor_tower(product)
        assert tower.order == 1
        assert tower.levels[0].K_order == 6
