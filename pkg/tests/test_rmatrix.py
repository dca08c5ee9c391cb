from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algebra.coeffring import Ring
from algebra.errors import MalformedTableError, VerificationError
from algebra.report import Status
from algebra.rmatrix import (
    RMatrix,
    cybe_grid,
    cybe_residual,
    heisenberg,
    heisenberg_action,
    induced_poisson,
    jacobi_residual,
    kaehler_differential,
    koszul_bracket,
    koszul_bracket_terms,
    omega1_lie,
    omega1_prelie,
    residual_identity_check,
    sl2,
    sl2_action,
)
from algebra.sampling import make_rng, random_monomial_triple, random_poly, random_rmatrix
from algebra.structures import ActionData, verify_lie_rinehart, verify_prelie_rinehart

SL2 = sl2()


@pytest.fixture(scope="module")
def grid():
    return cybe_grid(range(-2, 3))


class TestYangBaxterGrid:
    def test_grid_covers_the_cube(self, grid):
        assert len(grid) == 125
        assert list(grid.columns) == ["r1", "r2", "r3", "residual", "discriminant", "cybe", "omega1"]

    def test_residual_vanishes_exactly_on_the_cone(self, grid):
        on_cone = grid["r3"] ** 2 == 4 * grid["r1"] * grid["r2"]
        assert (grid["cybe"] == on_cone).all()
        assert (grid["discriminant"] == grid["r3"] ** 2 - 4 * grid["r1"] * grid["r2"]).all()

    def test_one_form_verdict_follows_the_residual(self, grid):
        assert (grid.loc[grid["cybe"], "omega1"] == "PASS").all()
        assert (grid.loc[~grid["cybe"], "omega1"] == "FAIL").all()

    @pytest.mark.parametrize("values", [(1, 1, 2), (0, 0, 0), (1, 0, 0), (-1, -1, 2)])
    def test_flat_points(self, values):
        r = RMatrix.from_list(SL2, values)
        assert cybe_residual(r).is_zero()
        assert verify_prelie_rinehart(omega1_prelie(r, sl2_action())).passed

    def test_curved_point(self):
        r = RMatrix.from_list(SL2, [0, 0, 1])
        assert not cybe_residual(r).is_zero()
        report = verify_prelie_rinehart(omega1_prelie(r, sl2_action()))
        assert report.status_of("associator_symmetry") == Status.FAIL


class TestPoisson:
    @given(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
    def test_sl2_bracket_of_coordinates(self, r1, r2, r3):
        action = sl2_action()
        ring = action.ring
        poisson = induced_poisson(RMatrix.from_list(SL2, [r1, r2, r3]), action)
        expected = ring.parse(f"{r1}*x1^2 + {r2}*x2^2 + {-r3}*x1*x2")
        assert poisson.bracket_of_vars(0, 1) == expected
        assert poisson.bracket_of_vars(1, 0) == -expected

    def test_zero_r_gives_zero_bracket(self):
        poisson = induced_poisson(RMatrix.from_list(SL2, [0, 0, 0]), sl2_action())
        assert poisson.table == {}

    def test_bracket_is_skew(self):
        action = sl2_action()
        poisson = induced_poisson(RMatrix.from_list(SL2, [1, 2, -1]), action)
        a, b = action.ring.parse("x1^2 + x2"), action.ring.parse("x1*x2")
        assert poisson.bracket(a, b) == -poisson.bracket(b, a)

    def test_non_action_is_refused(self):
        ring = Ring(("x1", "x2"))
        bad = ActionData(SL2, ring, [sl2_action(ring).images[1]] * 3)
        with pytest.raises(VerificationError):
            induced_poisson(RMatrix.from_list(SL2, [1, 0, 0]), bad)


class TestResidualIdentity:
    def test_heisenberg_sides(self):
        action = heisenberg_action()
        ring = action.ring
        r = RMatrix.from_list(heisenberg(), [1, 0, 0])
        report = residual_identity_check(r, action, ring.var(0), ring.var(1), ring.var(2))
        assert report.passed
        assert report.item("jacobi_residual").note == "-1"

    @settings(max_examples=25)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_identity_on_random_triples(self, seed):
        rng = make_rng(seed)
        action = heisenberg_action()
        a, b, c = random_monomial_triple(rng, action.ring)
        r = random_rmatrix(rng, heisenberg())
        assert residual_identity_check(r, action, a, b, c).passed

    @settings(max_examples=25)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_sl2_jacobi_residual_vanishes_on_the_cone(self, seed):
        rng = make_rng(seed)
        action = sl2_action()
        r = RMatrix.from_list(SL2, [1, 1, 2])
        poisson = induced_poisson(r, action)
        a, b, c = (random_poly(rng, action.ring, 2) for _ in range(3))
        assert jacobi_residual(poisson, a, b, c).is_zero()


class TestDecompositions:
    @given(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2))
    def test_residual_ignores_the_decomposition(self, r1, r2, r3):
        r = RMatrix.from_list(SL2, [r1, r2, r3])
        assert cybe_residual(r, r.transposed_decomposition()) == cybe_residual(r)

    def test_antisymmetric_input(self):
        r = RMatrix(SL2, {(1, 0): 3})
        assert r.as_list() == [Fraction(-3), 0, 0]

    def test_wrong_length(self):
        with pytest.raises(MalformedTableError):
            RMatrix.from_list(SL2, [1, 2])


class TestOneForms:
    def test_koszul_bracket_matches_term_formula(self):
        action = sl2_action()
        ring = action.ring
        poisson = induced_poisson(RMatrix.from_list(SL2, [1, 1, 2]), action)
        a, u, b, v = ring.parse("x2"), ring.parse("x1^2"), ring.parse("x1 + 1"), ring.parse("x2^2")
        alpha = a * kaehler_differential(ring, u)
        beta = b * kaehler_differential(ring, v)
        assert koszul_bracket(poisson, alpha, beta) == koszul_bracket_terms(poisson, a, u, b, v)

    def test_lie_structure_on_the_cone(self):
        lie = omega1_lie(RMatrix.from_list(SL2, [1, 1, 2]), sl2_action())
        assert lie.module.basis_names == ("dx1", "dx2")
        assert verify_lie_rinehart(lie).passed

    def test_differential(self):
        ring = Ring(("x1", "x2"))
        d = kaehler_differential(ring, ring.parse("x1^2*x2"))
        assert [str(c) for c in d.coeffs] == ["2*x1*x2", "x1^2"]
