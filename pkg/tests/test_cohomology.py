import pytest
from hypothesis import example, given, settings, strategies as st

from algebra.coeffring import QQ_RING, DerivationPair, FreeModule, LinearMap, Ring
from algebra.cohomology import (
    LIE,
    PRELIE,
    Cochain,
    RepresentationData,
    anchor_representation,
    check_representation,
    coboundary_solve_field,
    cocycle_check,
    cohomology_dims_field,
    complex_iso_H,
    complex_iso_H_inverse,
    induced_rep_on_C1,
    left_regular_representation,
    lie_coboundary,
    prelie_coboundary,
    regular_representation,
    semidirect_product,
    sub_adjacent_representation,
    trivial_representation,
)
from algebra.errors import CochainDegreeError, MalformedTableError, NotFieldCaseError, UnsupportedError
from algebra.report import Status
from algebra.sampling import make_rng, random_cochain, random_prelie_rinehart, random_representation
from algebra.structures import LieAlgebraFD, PreLieAlgebraFD, verify_prelie_rinehart
from fixtures.catalog import coordinate, coordinate_extension

RING = Ring(("x1", "x2"))


def random_setup(seed):
    rng = make_rng(seed)
    alg = random_prelie_rinehart(rng, RING, max_degree=1)
    return rng, random_representation(rng, alg)


class TestRepresentations:
    @pytest.mark.parametrize("build", [left_regular_representation, anchor_representation])
    def test_standard_representations(self, build):
        assert check_representation(build(coordinate(2))).passed

    def test_trivial_representation(self):
        rep = trivial_representation(coordinate(2), FreeModule(RING, ("v",)))
        assert check_representation(rep).passed

    def test_wrong_symbol(self):
        alg = coordinate(1)
        target = FreeModule(alg.ring, ("v",))
        rep = RepresentationData(alg, target, [DerivationPair.zero(target)], [LinearMap.zero(target, target)])
        assert check_representation(rep).status_of("symbol") == Status.FAIL

    def test_semidirect_product(self):
        total = semidirect_product(left_regular_representation(coordinate(1)))
        assert total.module.basis_names == ("D1", "D1'")
        assert verify_prelie_rinehart(total).passed

    def test_sub_adjacent_representation(self):
        rep = sub_adjacent_representation(left_regular_representation(coordinate(2)))
        assert not rep.is_prelie
        assert check_representation(rep).passed


class TestRegularRepresentation:
    def test_anchored_algebra_is_refused(self):
        with pytest.raises(UnsupportedError):
            regular_representation(coordinate(2))

    def test_random_anchored_algebra(self):
        rng = make_rng(188)
        alg = random_prelie_rinehart(rng, Ring(("x1",)), max_degree=1)
        assert alg.rank >= 2
        with pytest.raises(UnsupportedError):
            regular_representation(alg)
        rep = left_regular_representation(alg)
        assert check_representation(rep).passed
        for _ in range(30):
            phi = random_cochain(rng, rep, PRELIE, 1)
            assert prelie_coboundary(prelie_coboundary(phi)).is_zero()

    def test_anchor_free_algebra_keeps_right_multiplication(self):
        alg = PreLieAlgebraFD(("e1", "e2"), {(0, 0): (1, 0), (0, 1): (0, 1)}).to_rinehart()
        rep = regular_representation(alg)
        assert check_representation(rep).passed
        assert not rep.mu[0].is_zero()


class TestCoboundaries:
    @settings(max_examples=50)
    @given(st.integers(min_value=0, max_value=100_000), st.integers(1, 3))
    @example(188, 2)
    def test_prelie_delta_squared(self, seed, degree):
        rng, rep = random_setup(seed)
        phi = random_cochain(rng, rep, PRELIE, degree)
        assert prelie_coboundary(prelie_coboundary(phi)).is_zero()

    @settings(max_examples=50)
    @given(st.integers(min_value=0, max_value=100_000), st.integers(0, 2))
    @example(188, 1)
    def test_lie_d_squared(self, seed, degree):
        rng, rep = random_setup(seed)
        lie_rep = sub_adjacent_representation(rep)
        w = random_cochain(rng, lie_rep, LIE, degree)
        assert lie_coboundary(lie_coboundary(w)).is_zero()

    def test_hand_computed_coboundary(self):
        x = coordinate_extension()
        x1 = x.quotient.ring.var(0)
        assert x.omega == Cochain(PRELIE, 2, x.rep, {(0, 0): [2 * x1]})

    def test_zero_cochain(self):
        rep = anchor_representation(coordinate(2))
        assert prelie_coboundary(Cochain.zero(PRELIE, 1, rep)).is_zero()

    def test_cochains_are_stored_on_canonical_keys(self):
        rep = anchor_representation(coordinate(2))
        with pytest.raises(MalformedTableError):
            Cochain(PRELIE, 3, rep, {(1, 0, 0): [1]})
        c = Cochain(PRELIE, 3, rep, {(0, 1, 0): [1]})
        assert c.value((1, 0, 0)) == -c.value((0, 1, 0))
        assert c.value((1, 1, 0)).is_zero()

    def test_degree_bounds(self):
        rep = anchor_representation(coordinate(1))
        with pytest.raises(CochainDegreeError):
            Cochain(PRELIE, 0, rep)

    def test_cocycle_check_reports_witness(self):
        rep = anchor_representation(coordinate(2))
        x1 = rep.ring.var(0)
        report = cocycle_check(Cochain(PRELIE, 2, rep, {(1, 0): [x1]}))
        assert report.status_of("cocycle") == Status.FAIL
        assert report.item("cocycle").witness.indices == [0, 1, 0]


class TestChainMap:
    @settings(max_examples=20)
    @given(st.integers(min_value=0, max_value=100_000), st.integers(0, 2))
    def test_currying_commutes_with_coboundaries(self, seed, degree):
        rng, rep = random_setup(seed)
        c1_rep = induced_rep_on_C1(rep)
        psi = random_cochain(rng, c1_rep, LIE, degree)
        assert complex_iso_H(lie_coboundary(psi)) == prelie_coboundary(complex_iso_H(psi))

    @settings(max_examples=20)
    @given(st.integers(min_value=0, max_value=100_000), st.integers(1, 3))
    def test_currying_is_invertible(self, seed, degree):
        rng, rep = random_setup(seed)
        c1_rep = induced_rep_on_C1(rep)
        phi = random_cochain(rng, rep, PRELIE, degree)
        assert complex_iso_H(complex_iso_H_inverse(phi, c1_rep)) == phi

    def test_induced_representation_passes(self):
        rep = left_regular_representation(coordinate(2))
        c1_rep = induced_rep_on_C1(rep)
        assert c1_rep.target.rank == 4
        assert check_representation(c1_rep).passed


class TestFieldCohomology:
    def test_abelian_line(self):
        alg = PreLieAlgebraFD(("e",)).to_rinehart()
        rep = trivial_representation(alg, FreeModule(QQ_RING, ("v",)))
        assert cohomology_dims_field(alg, rep, 2) == [1, 1]

    def test_abelian_lie_line(self):
        lie = LieAlgebraFD(("a",)).to_rinehart()
        rep = trivial_representation(lie, FreeModule(QQ_RING, ("v",)))
        assert cohomology_dims_field(lie, rep, 2, kind=LIE) == [1, 1, 0]

    def test_idempotent_line(self):
        alg = PreLieAlgebraFD(("e",), {(0, 0): (1,)}).to_rinehart()
        assert cohomology_dims_field(alg, regular_representation(alg), 2) == [0, 0]

    def test_exact_cochains_are_solved(self):
        alg = PreLieAlgebraFD(("e",), {(0, 0): (1,)}).to_rinehart()
        rep = regular_representation(alg)
        phi = Cochain(PRELIE, 1, rep, {(0,): [3]})
        solved = coboundary_solve_field(prelie_coboundary(phi))
        assert solved is not None
        assert prelie_coboundary(solved) == prelie_coboundary(phi)

    def test_closed_class_without_primitive(self):
        alg = PreLieAlgebraFD(("e",)).to_rinehart()
        rep = trivial_representation(alg, FreeModule(QQ_RING, ("v",)))
        assert coboundary_solve_field(Cochain(PRELIE, 2, rep, {(0, 0): [1]})) is None

    def test_polynomial_ring_is_refused(self):
        rep = anchor_representation(coordinate(1))
        with pytest.raises(NotFieldCaseError):
            cohomology_dims_field(rep.algebra, rep, 2)
