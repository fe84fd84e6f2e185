"""
Tests for 0-cells, 1-cells, 2-cells and the constructions of the 2-category:
SIm-factorization, equivalences, bicoproducts and bipullbacks.
"""

import numpy as np
import pytest

from bisetcalc.algebra.gsets import make_gmap, point_gset, regular_gset, trivial_gset
from bisetcalc.algebra.scat import (
    OneCell,
    OrbitChoice,
    TwoCell,
    ZeroCell,
    bicoproduct,
    bipullback,
    compare_factorizations,
    compose_one,
    enumerate_one_cells,
    find_quasi_inverse,
    hcompose_two,
    is_bipullback_square,
    is_equivalence,
    is_stab_surjective,
    make_one_cell,
    make_two_cell,
    mediate_bipullback,
    mediating_two_cell,
    sim_factorize,
    two_cells_between,
    vcompose_two,
    whisker,
)
from bisetcalc.core.exceptions import CellMismatch, InvalidCell, InvalidTwoCell, NotAFactorization

# =============================================================================
# 1-cells
# =============================================================================


class TestMakeOneCell:
    """Both 1-cell axioms are checked with a witness."""

    def test_inclusion_cell(self, pt_e, pt_c2):
        cell = make_one_cell(pt_e, pt_c2, [0], [[0]])
        assert cell.base.tolist() == [0]
        assert not cell.is_equivariant

    def test_equivariance_violation(self, free_c2):
        # the identity on points with θ ≡ e cannot move the swap
        with pytest.raises(InvalidCell) as exc_info:
            make_one_cell(free_c2, free_c2, [0, 1], [[0, 0], [0, 0]])

        assert exc_info.value.context["axiom"] == "equivariance"

    def test_cocycle_violation(self, pt_c2):
        # θ(1) = 1 for every g breaks θ(0) = e
        with pytest.raises(InvalidCell) as exc_info:
            make_one_cell(pt_c2, pt_c2, [0], [[1, 1]])

        assert exc_info.value.context["axiom"] == "cocycle"

    def test_theta_shape(self, pt_c2):
        with pytest.raises(InvalidCell):
            make_one_cell(pt_c2, pt_c2, [0], [[0, 1, 0]])

    def test_orbit_data_builds_valid_cells(self, c3):
        free = ZeroCell(regular_gset(c3))
        cell = OneCell.from_orbit_data(
            free, ZeroCell.point(c3), [OrbitChoice(0, {0: 0}, {1: 1, 2: 1})]
        )
        assert cell.theta.shape == (3, 3)
        assert cell.theta[:, 0].tolist() == [0, 0, 0]


class TestComposition:
    def test_identity_is_neutral(self, res_cell):
        left = compose_one(OneCell.identity(res_cell.source), res_cell)
        right = compose_one(res_cell, OneCell.identity(res_cell.target))
        assert left == res_cell
        assert right == res_cell

    def test_inclusion_then_quotient(self, res_cell, quot_cell, pt_e):
        composite = compose_one(res_cell, quot_cell)
        assert composite == OneCell.identity(pt_e)

    def test_equivariant_cells_compose_equivariantly(self, c2):
        two = trivial_gset(c2, 2)
        f = OneCell.equivariant(make_gmap(regular_gset(c2), two, [0, 0]))
        g = OneCell.equivariant(make_gmap(two, point_gset(c2), [0, 0]))
        composite = compose_one(f, g)
        assert composite.is_equivariant
        assert composite.base.tolist() == [0, 0]

    def test_mismatched_composition(self, res_cell):
        with pytest.raises(CellMismatch):
            compose_one(res_cell, res_cell)

    def test_enumerate_one_cells(self, pt_e, pt_c2):
        assert len(list(enumerate_one_cells(pt_e, pt_c2))) == 1
        # one for each endomorphism of C2
        assert len(list(enumerate_one_cells(pt_c2, pt_c2))) == 2


# =============================================================================
# 2-cells
# =============================================================================


class TestTwoCells:
    def test_inverse_composes_to_identity(self, pt_c2):
        identity = OneCell.identity(pt_c2)
        eps = make_two_cell(identity, identity, [1])
        assert vcompose_two(eps, eps.inverse()).is_identity

    def test_conjugations_of_identity_cell(self, pt_c2, free_c2):
        assert len(list(two_cells_between(OneCell.identity(pt_c2), OneCell.identity(pt_c2)))) == 2
        assert len(list(two_cells_between(OneCell.identity(free_c2), OneCell.identity(free_c2)))) == 1

    def test_base_axiom(self, free_c2):
        identity = OneCell.identity(free_c2)
        with pytest.raises(InvalidTwoCell) as exc_info:
            make_two_cell(identity, identity, [1, 1])

        assert exc_info.value.context["axiom"] == "base"

    def test_non_parallel_cells(self, res_cell, quot_cell):
        with pytest.raises(CellMismatch):
            make_two_cell(res_cell, quot_cell, [0])

    def test_whiskering_identity_gives_identity(self, res_cell):
        identity = TwoCell.identity(res_cell)
        assert whisker(OneCell.identity(res_cell.target), identity, "left").is_identity
        assert whisker(OneCell.identity(res_cell.source), identity, "right").is_identity

    def test_interchange(self, pt_c2):
        """(δ∘α′)·(β∘ε) = (β′∘ε)·(δ∘α) on endo-2-cells of the identity of pt/C2."""
        identity = OneCell.identity(pt_c2)
        eps = make_two_cell(identity, identity, [1])
        delta = make_two_cell(identity, identity, [1])
        lhs = vcompose_two(whisker(identity, eps, "left"), whisker(identity, delta, "right"))
        rhs = vcompose_two(whisker(identity, delta, "right"), whisker(identity, eps, "left"))
        assert np.array_equal(lhs.eps, rhs.eps)
        assert hcompose_two(eps, delta).eps.tolist() == [0]


# =============================================================================
# Stab-surjectivity and SIm
# =============================================================================


class TestStabSurjective:
    def test_quotient_is_stab_surjective(self, quot_cell):
        assert is_stab_surjective(quot_cell)

    def test_inclusion_is_not(self, res_cell):
        verdict = is_stab_surjective(res_cell)
        assert not verdict
        assert verdict.witness["condition"] == "stabilizer"

    def test_missing_orbit(self, c2):
        two = ZeroCell(trivial_gset(c2, 2))
        cell = OneCell.equivariant(make_gmap(point_gset(c2), two.gset, [0]))
        verdict = is_stab_surjective(cell)
        assert verdict.witness == {"condition": "orbit", "y": 1}


class TestSImFactorization:
    def test_equivariant_cell(self, c2):
        f = OneCell.equivariant(make_gmap(regular_gset(c2), point_gset(c2), [0, 0]))
        fac = sim_factorize(f)
        assert fac.sim.size == 2
        assert sorted(fac.unit.base.tolist()) == [0, 1]

    def test_quotient(self, quot_cell):
        assert sim_factorize(quot_cell).sim.size == 1

    def test_inclusion(self, res_cell):
        fac = sim_factorize(res_cell)
        assert fac.sim.size == 2
        assert fac.alpha_tilde.image.tolist() == [0, 0]

    def test_factorization_composes_back(self, res_cell):
        fac = sim_factorize(res_cell)
        assert compose_one(fac.unit, OneCell.equivariant(fac.alpha_tilde)) == res_cell

    def test_compare_with_itself(self, quot_cell):
        fac = sim_factorize(quot_cell)
        omega = compare_factorizations(
            quot_cell, fac.unit, fac.alpha_tilde, TwoCell.identity(quot_cell)
        )
        assert omega.image.tolist() == list(range(fac.sim.size))

    def test_compare_requires_stab_surjective(self, res_cell):
        identity_gamma = make_gmap(res_cell.target.gset, res_cell.target.gset, [0])
        with pytest.raises(NotAFactorization):
            compare_factorizations(res_cell, res_cell, identity_gamma, TwoCell.identity(res_cell))


# =============================================================================
# Equivalences
# =============================================================================


class TestEquivalences:
    def test_identity(self, pt_c2):
        verdict = is_equivalence(OneCell.identity(pt_c2))
        assert verdict
        assert verdict.quasi_inverse == OneCell.identity(pt_c2)

    def test_induction_equivalence(self, pt_e, free_c2):
        upsilon = make_one_cell(pt_e, free_c2, [0], [[0]])
        verdict = is_equivalence(upsilon)
        assert verdict
        assert verdict.rho is not None and verdict.lam is not None

    def test_quotient_is_not_an_equivalence(self, quot_cell):
        verdict = is_equivalence(quot_cell)
        assert not verdict
        assert verdict.witness["condition"] == "faithful"

    def test_exhaustive_search_agrees(self, quot_cell, pt_e, free_c2):
        assert not find_quasi_inverse(quot_cell)
        assert find_quasi_inverse(make_one_cell(pt_e, free_c2, [0], [[0]]))


# =============================================================================
# Bicoproducts and bipullbacks
# =============================================================================


class TestBicoproduct:
    def test_points_over_trivial_groups(self, pt_e):
        bc = bicoproduct(pt_e, pt_e)
        assert bc.cell.size == 2
        assert bc.cell.group.order == 1

    def test_points_over_c2(self, pt_c2):
        bc = bicoproduct(pt_c2, pt_c2)
        assert bc.cell.group.order == 4
        assert bc.cell.size == 4

    def test_empty_summand_is_neutral(self, e, pt_c2):
        bc = bicoproduct(ZeroCell.empty(e), pt_c2)
        assert is_equivalence(bc.right)


class TestBipullback:
    def test_inclusion_with_itself(self, res_cell):
        pb = bipullback(res_cell, res_cell)
        assert pb.cell.group.order == 1
        assert pb.cell.size == 2
        assert pb.kappa.eps.tolist() == [0, 1]

    def test_identity_leg_gives_graph(self, res_cell):
        pb = bipullback(res_cell, OneCell.identity(res_cell.target))
        assert is_equivalence(pb.left)

    def test_stab_surjectivity_is_stable(self, quot_cell):
        pb = bipullback(OneCell.identity(quot_cell.target), quot_cell)
        assert is_stab_surjective(pb.left)

    def test_canonical_square_is_a_bipullback(self, res_cell):
        pb = bipullback(res_cell, res_cell)
        assert is_bipullback_square(res_cell, res_cell, pb.left, pb.right, pb.kappa)

    def test_mediator_of_the_square_itself(self, res_cell):
        pb = bipullback(res_cell, res_cell)
        mediation = mediate_bipullback(pb, pb.left, pb.right, pb.kappa)
        assert mediation.cell.base.tolist() == list(range(pb.cell.size))
        assert mediating_two_cell(pb, mediation, mediation).is_identity

    def test_requires_common_target(self, res_cell, quot_cell):
        with pytest.raises(CellMismatch):
            bipullback(res_cell, quot_cell)
