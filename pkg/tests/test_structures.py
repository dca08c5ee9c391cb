import pytest
from hypothesis import given, settings, strategies as st

from algebra.coeffring import DerivationPair, Element, LinearMap, Ring, VectorField
from algebra.errors import ModuleMismatchError, NonCommutingFieldsError, VerificationError
from algebra.report import Status
from algebra.sampling import make_rng, random_prelie_rinehart, random_unipotent
from algebra.structures import (
    ActionData,
    LieAlgebraFD,
    PreLieAlgebraFD,
    change_basis,
    check_action,
    check_homomorphism,
    coordinate_algebra,
    derivation_extension,
    extend_product,
    sub_adjacent,
    tensor_product_algebra,
    transformation_algebra,
    transformation_lie_bracket,
    transformation_lie_rinehart,
    verify_lie_rinehart,
    verify_prelie_rinehart,
)
from fixtures.catalog import coordinate, laurent_line, mutated_coordinate, polynomial_line

LINE = Ring(("x1",))


def functional_action() -> ActionData:
    """e1.y = y, e2.y = 0, with e1 acting by x1 d/dx1"""
    alg = PreLieAlgebraFD(("e1", "e2"), {(0, 0): (1, 0), (0, 1): (0, 1)})
    return ActionData(alg, LINE, [VectorField(LINE, [LINE.var(0)]), VectorField.zero(LINE)])


class TestCoordinateAlgebras:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_standard_coordinate_algebra_passes(self, n):
        assert verify_prelie_rinehart(coordinate(n)).passed

    def test_mutated_product_breaks_anchor_law(self):
        report = verify_prelie_rinehart(mutated_coordinate())
        assert report.status_of("anchor_law") == Status.FAIL
        assert report.item("anchor_law").witness.indices == [0, 1]

    def test_non_commuting_fields(self):
        ring = Ring(("x1", "x2"))
        with pytest.raises(NonCommutingFieldsError):
            coordinate_algebra(ring, [VectorField.partial(ring, 0), VectorField(ring, [0, ring.var(0)])])

    @pytest.mark.parametrize("build", [polynomial_line, laurent_line])
    def test_derivation_lines_pass(self, build):
        assert verify_prelie_rinehart(build()).passed

    def test_tensor_product(self):
        alg = tensor_product_algebra(coordinate(1), laurent_line())
        assert alg.ring.variables == ("x1", "s")
        assert alg.ring.laurent
        assert verify_prelie_rinehart(alg).passed


class TestSubAdjacent:
    @settings(max_examples=25)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_sub_adjacent_is_lie_rinehart(self, seed):
        alg = random_prelie_rinehart(make_rng(seed), Ring(("x1", "x2")), max_degree=1)
        assert verify_prelie_rinehart(alg).passed
        assert verify_lie_rinehart(sub_adjacent(alg)).passed

    def test_sub_adjacent_refuses_failing_input(self):
        with pytest.raises(VerificationError) as info:
            sub_adjacent(mutated_coordinate())
        assert not info.value.report.passed

    def test_bracket_is_commutator(self):
        lie = sub_adjacent(coordinate(2))
        x1 = lie.ring.var(0)
        d1, d2 = lie.basis(0), lie.basis(1)
        assert lie.bracket(d1, x1 * d2) == d2


class TestHomomorphisms:
    @settings(max_examples=25)
    @given(st.integers(min_value=0, max_value=10_000))
    def test_change_of_basis_is_an_isomorphism(self, seed):
        rng = make_rng(seed)
        alg = random_prelie_rinehart(rng, LINE, max_degree=1)
        forward, inverse = random_unipotent(rng, alg.module, 1)
        assert forward.compose(inverse) == LinearMap.identity(alg.module)
        moved = change_basis(alg, forward, inverse)
        assert verify_prelie_rinehart(moved).passed
        assert check_homomorphism(forward, moved, alg).passed

    def test_non_homomorphism(self):
        alg = coordinate(2)
        swap = LinearMap(alg.module, alg.module, [[0, 1], [1, 0]])
        report = check_homomorphism(swap, alg, alg)
        assert report.status_of("anchor") == Status.FAIL

    def test_wrong_modules(self):
        with pytest.raises(ModuleMismatchError):
            check_homomorphism(LinearMap.identity(coordinate(1).module), coordinate(1), coordinate(2))


class TestTransformationAlgebras:
    def test_action_passes(self):
        assert check_action(functional_action()).passed

    def test_action_must_respect_brackets(self):
        lie = LieAlgebraFD(("a", "b"), {(0, 1): (0, 1)})
        action = ActionData(lie, LINE, [VectorField.partial(LINE, 0), VectorField.partial(LINE, 0)])
        assert check_action(action).status_of("action_morphism") == Status.FAIL

    def test_transformation_algebra(self):
        action = functional_action()
        alg = transformation_algebra(action)
        assert verify_prelie_rinehart(alg).passed
        assert sub_adjacent(alg) == transformation_lie_rinehart(action)

    def test_transformation_bracket(self):
        action = functional_action()
        module = transformation_algebra(action).module
        x1 = LINE.var(0)
        x = Element(module, [x1, 0])
        y = Element(module, [0, x1 * x1])
        assert transformation_lie_bracket(action, x, y) == Element(module, [0, 3 * x1 ** 3])


class TestDerivationExtension:
    def test_extension_by_outer_derivation(self):
        alg = PreLieAlgebraFD(("e",), {(0, 0): (1,)}).to_rinehart(LINE)
        dp = DerivationPair(LinearMap.zero(alg.module, alg.module), VectorField.partial(LINE, 0))
        ext = derivation_extension(alg, dp)
        assert ext.module.basis_names == ("a", "e")
        assert verify_prelie_rinehart(ext).passed

    def test_rejects_non_derivation(self):
        alg = PreLieAlgebraFD(("e",), {(0, 0): (1,)}).to_rinehart(LINE)
        dp = DerivationPair.from_linear(LinearMap.identity(alg.module))
        with pytest.raises(VerificationError):
            derivation_extension(alg, dp)


class TestExtendProduct:
    def test_leibniz_in_the_right_slot(self):
        alg = coordinate(1)
        x1 = LINE.var(0)
        d1 = alg.basis(0)
        assert extend_product(alg, x1 * d1, x1 * d1) == x1 * d1
        assert extend_product(alg, d1, (x1 * x1) * d1) == (2 * x1) * d1

    def test_left_slot_is_linear(self):
        alg = coordinate(1)
        x1 = LINE.var(0)
        d1 = alg.basis(0)
        assert extend_product(alg, (x1 * x1) * d1, d1).is_zero()
