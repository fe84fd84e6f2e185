"""
Tests for G-sets, G-maps and the constructions on them.
"""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
import numpy as np
import pytest

from bisetcalc.algebra.groups import (
    Subgroup,
    quotient_hom,
    subgroup_generated,
    trivial_subgroup,
    whole,
)
from bisetcalc.algebra.gsets import (
    GMap,
    balanced_product,
    coproduct,
    coset_gset,
    fibered_product,
    fixed_points_subgroup,
    induce,
    make_gmap,
    make_gset,
    orbits,
    point_gset,
    regular_gset,
    restrict,
    sub_gset,
    trivial_gset,
)
from bisetcalc.core.exceptions import GroupMismatch, InvalidAction, NotEquivariant, NotInjective

# =============================================================================
# Action tables
# =============================================================================


class TestMakeGSet:
    def test_valid_action(self, c2):
        gset = make_gset(c2, [[0, 1, 2], [1, 0, 2]])
        assert gset.size == 3
        assert gset.apply(1, 0) == 1

    def test_identity_must_act_trivially(self, c2):
        with pytest.raises(InvalidAction):
            make_gset(c2, [[1, 0], [0, 1]])

    def test_action_must_compose(self, c3):
        # 1 swaps two points, so 1·1 = 2 would have to swap them back
        with pytest.raises(InvalidAction) as exc_info:
            make_gset(c3, [[0, 1], [1, 0], [1, 0]])

        assert set(exc_info.value.context) == {"g", "h", "x"}

    def test_wrong_row_count(self, c2):
        with pytest.raises(InvalidAction):
            make_gset(c2, [[0, 1]])

    def test_labels_do_not_affect_equality(self, c2):
        plain = regular_gset(c2)
        labelled = make_gset(c2, plain.act, labels=["a", "b"])
        assert plain == labelled
        assert labelled.index_of("b") == 1


# =============================================================================
# Orbits and fixed points
# =============================================================================


class TestOrbits:
    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_trivial_action(self, c2, n: int):
        found = orbits(trivial_gset(c2, n))
        assert len(found) == n
        assert all(o.stabilizer.order == 2 for o in found)

    def test_regular_c2(self, c2):
        (orbit,) = orbits(regular_gset(c2))
        assert orbit.points == (0, 1)
        assert orbit.stabilizer.order == 1

    def test_s3_on_three_letters(self, s3):
        letters = coset_gset(s3, Subgroup(s3, (0, 1)))
        (orbit,) = orbits(letters)
        assert letters.size == 3
        assert orbit.stabilizer.order == 2

    def test_fixed_points(self, c2):
        one_swap = make_gset(c2, [[0, 1, 2], [1, 0, 2]])
        assert fixed_points_subgroup(one_swap, whole(c2)) == (2,)
        assert fixed_points_subgroup(one_swap, trivial_subgroup(c2)) == (0, 1, 2)
        assert fixed_points_subgroup(regular_gset(c2), whole(c2)) == ()

    def test_sub_gset_needs_invariant_subset(self, c2):
        one_swap = make_gset(c2, [[0, 1, 2], [1, 0, 2]])
        sub, inclusion = sub_gset(one_swap, [0, 1])
        assert sub.size == 2
        assert inclusion.image.tolist() == [0, 1]
        with pytest.raises(InvalidAction):
            sub_gset(one_swap, [0])


# =============================================================================
# Equivariant maps
# =============================================================================


class TestGMap:
    def test_collapse_is_equivariant(self, c2):
        collapse = make_gmap(regular_gset(c2), point_gset(c2), [0, 0])
        assert collapse.fiber(0) == (0, 1)
        assert collapse.is_surjective

    def test_non_equivariant_map(self, c2):
        with pytest.raises(NotEquivariant):
            make_gmap(regular_gset(c2), trivial_gset(c2, 2), [0, 1])

    def test_group_mismatch(self, c2, c3):
        with pytest.raises(GroupMismatch):
            make_gmap(point_gset(c2), point_gset(c3), [0])

    def test_inverse_of_bijection(self, c2):
        swap = make_gmap(regular_gset(c2), regular_gset(c2), [1, 0])
        assert swap.is_bijective
        assert swap.then(swap.inverse()) == GMap.identity(regular_gset(c2))


# =============================================================================
# Coproducts, fibered products, induction
# =============================================================================


class TestConstructions:
    def test_coproduct_with_empty(self, c2):
        free = regular_gset(c2)
        union = coproduct(free, trivial_gset(c2, 0))
        assert union.gset == free

    def test_two_fixed_points(self, c2):
        union = coproduct(point_gset(c2), point_gset(c2))
        assert fixed_points_subgroup(union.gset, whole(c2)) == (0, 1)

    def test_two_free_orbits(self, c2):
        union = coproduct(regular_gset(c2), regular_gset(c2))
        assert union.gset.size == 4
        assert len(orbits(union.gset)) == 2
        assert union.inj_right.image.tolist() == [2, 3]

    def test_fibered_product_with_identity_is_graph(self, c2):
        one_swap = make_gset(c2, [[0, 1, 2], [1, 0, 2]])
        f = make_gmap(one_swap, point_gset(c2), [0, 0, 0])
        fp = fibered_product(f, GMap.identity(point_gset(c2)))
        assert fp.gset.size == one_swap.size

    def test_fibered_product_of_free_sets(self, c2):
        f = make_gmap(regular_gset(c2), point_gset(c2), [0, 0])
        fp = fibered_product(f, f)
        assert fp.gset.size == 4
        assert len(orbits(fp.gset)) == 2

    def test_disjoint_images_give_empty_product(self, c2):
        two = trivial_gset(c2, 2)
        f = make_gmap(point_gset(c2), two, [0])
        g = make_gmap(point_gset(c2), two, [1])
        assert fibered_product(f, g).gset.size == 0

    def test_induce_along_identity(self, c2):
        free = regular_gset(c2)
        bp = induce(quotient_hom(c2, trivial_subgroup(c2)), free)
        assert bp.gset.size == free.size
        assert sorted(bp.upsilon.tolist()) == [0, 1]

    def test_induce_trivial_to_c2(self, c2, e):
        bp = induce(trivial_subgroup(c2).inclusion(), point_gset(e))
        assert bp.gset.size == 2
        assert orbits(bp.gset)[0].stabilizer.order == 1

    def test_induce_transposition_subgroup(self, c2, s3):
        transposition = Subgroup(s3, (0, 1))
        bp = induce(transposition.inclusion(), point_gset(transposition.inclusion().source))
        assert bp.gset.size == 3

    def test_induce_requires_injective_hom(self, c2):
        with pytest.raises(NotInjective):
            induce(quotient_hom(c2, whole(c2)), point_gset(c2))

    def test_balanced_product_labels_are_least_pairs(self, c2):
        free = regular_gset(c2)
        theta = np.tile(np.arange(2), (2, 1))
        bp = balanced_product(c2, free, theta)
        # (η, x) ~ (η·g⁻¹, g·x): two classes, labelled (0, 0) and (0, 1)
        assert bp.gset.labels == ((0, 0), (0, 1))
        assert bp.class_of(0, 1) == bp.class_of(1, 0)

    def test_restrict_along_quotient(self, c2):
        q = quotient_hom(c2, whole(c2))
        pulled = restrict(trivial_gset(q.target, 3), q)
        assert pulled.group == c2
        assert len(orbits(pulled)) == 3


class TestCosetSets:
    @given(generator=st.sampled_from([0, 1, 2, 5]))
    @settings(max_examples=4, suppress_health_check=[HealthCheck.function_scoped_fixture])
    def test_coset_count_is_index(self, s3, generator: int):
        k = subgroup_generated(s3, [generator])
        cosets = coset_gset(s3, k)
        assert cosets.size == k.index
        assert cosets.labels is not None
        assert cosets.labels[0] == 0
