import pytest
from hypothesis import given, settings, strategies as st

from algebra.coeffring import Element, Ring, VectorField
from algebra.errors import MalformedTableError, RingMismatchError
from algebra.freeprelie import (
    RootedTree,
    TreePoly,
    basis_count,
    derivation_morphism,
    enumerate_trees,
    free_prelie_rinehart,
    graft,
    projection_surjective,
    projection_to_coordinates,
    star_action,
    verify_truncated,
)
from algebra.sampling import make_rng, random_vector_field

LINE = Ring(("x1",))
PLANE = Ring(("x1", "x2"))
SMALL_TREES = [t for n in (1, 2) for t in enumerate_trees(2, n)]


def euler(ring):
    return VectorField(ring, [ring.var(0)])


def tree(text):
    return RootedTree.parse(text)


class TestTrees:
    def test_children_are_unordered(self):
        assert tree("a(b,a)") == tree("a(a,b)")
        assert tree("b(a(b),a)").text() == "b(a,a(b))"

    def test_size_and_labels(self):
        t = tree("a(b,a(c))")
        assert t.size == 4
        assert sorted(t.labels()) == [0, 0, 1, 2]

    @pytest.mark.parametrize("text", ["", "A", "a(b", "a(b,)", "a)b", "ab"])
    def test_bad_text(self, text):
        with pytest.raises(MalformedTableError):
            RootedTree.parse(text)

    @pytest.mark.parametrize("generators,size,count", [
        (1, 1, 1), (1, 2, 1), (1, 3, 2), (1, 4, 4), (1, 5, 9),
        (2, 1, 2), (2, 2, 4), (2, 3, 14), (2, 4, 52),
    ])
    def test_basis_counts(self, generators, size, count):
        assert basis_count(generators, size) == count

    def test_enumeration_is_sorted_and_distinct(self):
        trees = enumerate_trees(2, 3)
        assert trees == sorted(set(trees))


class TestGrafting:
    def test_leaf_onto_leaf(self):
        assert graft(tree("a"), tree("b")) == TreePoly.of(tree("b(a)"))

    def test_graft_reaches_every_node(self):
        assert graft(tree("a"), tree("b(a)")) == TreePoly({tree("b(a,a)"): 1, tree("b(a(a))"): 1})

    def test_bound_drops_large_trees(self):
        product = graft(tree("a"), tree("b"), bound=1)
        assert product.is_zero()
        assert product.overflow

    @given(st.sampled_from(SMALL_TREES), st.sampled_from(SMALL_TREES), st.sampled_from(SMALL_TREES))
    def test_associator_symmetry(self, t1, t2, t3):
        x, y, z = TreePoly.of(t1), TreePoly.of(t2), TreePoly.of(t3)
        assert (x * y) * z - x * (y * z) == (y * x) * z - y * (x * z)

    def test_star_action_applies_last_letter_first(self):
        a, b, c = (TreePoly.of(tree(s)) for s in "abc")
        assert star_action([a, b], c) == a * (b * c)
        assert star_action([], c) == c

    def test_text(self):
        poly = TreePoly({tree("b(a)"): 1, tree("a"): -2})
        assert str(poly) == "(-2)*a + b(a)"


class TestDerivationMorphism:
    def test_generators_map_to_their_fields(self):
        phi = [VectorField.partial(LINE, 0), euler(LINE)]
        assert derivation_morphism(phi, tree("b")) == phi[1]

    @settings(max_examples=25)
    @given(st.integers(min_value=0, max_value=10_000),
           st.sampled_from(SMALL_TREES), st.sampled_from(SMALL_TREES))
    def test_grafting_maps_to_the_coordinate_product(self, seed, t1, t2):
        rng = make_rng(seed)
        phi = [random_vector_field(rng, PLANE, 2) for _ in range(2)]
        image = VectorField.zero(PLANE)
        for t, coeff in graft(t1, t2).terms.items():
            image = image + coeff * derivation_morphism(phi, t)
        expected = derivation_morphism(phi, t1).compose_product(derivation_morphism(phi, t2))
        assert image == expected


class TestTruncatedAlgebra:
    def test_single_generator(self):
        free = free_prelie_rinehart(LINE, [euler(LINE)], bound=5)
        assert len(free.trees) == 1 + 1 + 2 + 4 + 9
        assert verify_truncated(free).passed

    def test_two_generators(self):
        free = free_prelie_rinehart(LINE, [VectorField.partial(LINE, 0), euler(LINE)], bound=4)
        assert free.algebra.rank == 2 + 4 + 14 + 52
        report = verify_truncated(free)
        assert report.passed
        assert report.item("overflow").note

    def test_products_past_the_bound_vanish(self):
        free = free_prelie_rinehart(LINE, [euler(LINE)], bound=2)
        alg = free.algebra
        a, ba = free.index(tree("a")), free.index(tree("a(a)"))
        assert alg.product_of(a, a) == free.element(TreePoly.of(tree("a(a)")))
        assert alg.product_of(a, ba).is_zero()

    def test_generator_over_another_ring(self):
        with pytest.raises(RingMismatchError):
            free_prelie_rinehart(LINE, [VectorField.partial(PLANE, 0)], bound=2)

    def test_projection_columns_are_anchors(self):
        free = free_prelie_rinehart(LINE, [euler(LINE)], bound=3)
        pi, target = projection_to_coordinates(free)
        assert target.module.basis_names == ("D1",)
        leaf = free.index(tree("a"))
        assert pi.column(leaf) == Element(target.module, [LINE.var(0)])

    def test_surjectivity(self):
        assert projection_surjective(free_prelie_rinehart(LINE, [VectorField.partial(LINE, 0)], bound=2))
        assert not projection_surjective(free_prelie_rinehart(LINE, [euler(LINE)], bound=2))
