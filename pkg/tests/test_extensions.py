import pytest
from hypothesis import given, settings, strategies as st

from algebra.coeffring import DerivationPair, FreeModule, LinearMap, QQ_RING, Ring
from algebra.cohomology import (
    PRELIE,
    Cochain,
    RepresentationData,
    anchor_representation,
    coboundary_solve_field,
    prelie_coboundary,
    trivial_representation,
)
from algebra.errors import ModuleMismatchError, NotFieldCaseError, SectionError
from algebra.extensions import (
    ExtensionData,
    build_extension,
    check_extension_conditions,
    equivalence_decide_field,
    extract_from_split,
    perturb_split,
    verify_equivalence,
)
from algebra.report import Status
from algebra.sampling import (
    make_rng,
    random_cochain,
    random_field_prelie,
    random_linear_map,
    random_prelie_rinehart,
    random_representation,
)
from algebra.structures import PreLieAlgebraFD, PreLieRinehartData, verify_prelie_rinehart
from fixtures.catalog import coordinate, coordinate_extension

RING = Ring(("x1", "x2"))


def abelian_extension(rng, ring=RING):
    """Random quotient and structure maps, omega a coboundary"""
    quotient = random_prelie_rinehart(rng, ring, max_degree=1)
    rep = random_representation(rng, quotient)
    kernel = PreLieRinehartData(rep.target, {})
    omega = prelie_coboundary(random_cochain(rng, rep, PRELIE, 1, max_degree=1))
    return ExtensionData(quotient, kernel, rep, omega)


def field_extension(rng):
    quotient = random_field_prelie(rng)
    rep = trivial_representation(quotient, FreeModule(QQ_RING, ("v",)))
    return ExtensionData(quotient, PreLieRinehartData(rep.target, {}), rep)


def rational_extension(quotient_names, kernel_names, rho, mu, kernel_product=None):
    """Extension over Q of the abelian algebra on quotient_names; rho, mu given as matrices"""
    quotient = PreLieAlgebraFD(quotient_names).to_rinehart()
    target = FreeModule(QQ_RING, kernel_names)
    rep = RepresentationData(quotient, target,
                             [DerivationPair.from_linear(LinearMap(target, target, rows)) for rows in rho],
                             [LinearMap(target, target, rows) for rows in mu])
    kernel = PreLieRinehartData(target, {k: target.basis(v) for k, v in (kernel_product or {}).items()})
    return ExtensionData(quotient, kernel, rep)


def failing_conditions(x):
    return [item.check for item in check_extension_conditions(x).failures()]


class TestExtensionConditions:
    @settings(max_examples=20)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_random_extensions_are_prelie_rinehart(self, seed):
        x = abelian_extension(make_rng(seed))
        assert check_extension_conditions(x).passed
        assert verify_prelie_rinehart(build_extension(x).total).passed

    def test_non_closed_omega_fails(self):
        quotient = coordinate(2)
        rep = anchor_representation(quotient)
        x1 = quotient.ring.var(0)
        x = ExtensionData(quotient, PreLieRinehartData(rep.target, {}), rep,
                          Cochain(PRELIE, 2, rep, {(1, 0): [x1]}))
        report = check_extension_conditions(x)
        assert report.status_of("ext5") == Status.FAIL
        assert report.status_of("ext1") == Status.PASS
        assert not verify_prelie_rinehart(build_extension(x).total).passed

    def test_rho_commutator_condition(self):
        zero, up = [[0, 0], [0, 0]], [[0, 0], [1, 0]]
        down = [[0, 1], [0, 0]]
        base = rational_extension(("e1", "e2"), ("u1", "u2"), [zero, up], [zero, zero])
        assert check_extension_conditions(base).passed
        x = rational_extension(("e1", "e2"), ("u1", "u2"), [down, up], [zero, zero])
        assert failing_conditions(x) == ["ext1"]
        assert not verify_prelie_rinehart(build_extension(x).total).passed

    def test_mu_square_condition(self):
        base = rational_extension(("e",), ("v",), [[[0]]], [[[0]]])
        assert check_extension_conditions(base).passed
        x = rational_extension(("e",), ("v",), [[[0]]], [[[1]]])
        assert failing_conditions(x) == ["ext2"]
        assert not verify_prelie_rinehart(build_extension(x).total).passed

    def test_kernel_product_against_rho(self):
        base = rational_extension(("e",), ("v",), [[[1]]], [[[0]]])
        assert check_extension_conditions(base).passed
        x = rational_extension(("e",), ("v",), [[[1]]], [[[0]]], {(0, 0): 0})
        assert failing_conditions(x) == ["ext3"]
        assert not verify_prelie_rinehart(build_extension(x).total).passed

    def test_kernel_product_against_mu(self):
        zero = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
        nilpotent = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
        base = rational_extension(("e",), ("a", "b", "c"), [zero], [nilpotent])
        assert check_extension_conditions(base).passed
        x = rational_extension(("e",), ("a", "b", "c"), [zero], [nilpotent], {(2, 0): 0})
        assert failing_conditions(x) == ["ext4"]
        assert not verify_prelie_rinehart(build_extension(x).total).passed

    def test_kernel_must_have_zero_anchor(self):
        quotient = coordinate(1)
        rep = anchor_representation(quotient)
        with pytest.raises(ModuleMismatchError):
            ExtensionData(quotient, coordinate(1), rep)

    def test_coordinate_extension(self):
        x = coordinate_extension()
        assert check_extension_conditions(x).passed
        total = build_extension(x).total
        assert total.module.basis_names == ("D1", "1")
        assert verify_prelie_rinehart(total).passed


class TestSplits:
    def test_canonical_split_recovers_the_data(self):
        x = coordinate_extension()
        split = build_extension(x)
        assert split.check_split()
        assert extract_from_split(split.total, [1], split.split) == x

    def test_projection_kills_the_kernel(self):
        split = build_extension(coordinate_extension())
        assert split.projection().compose(split.inclusion()).is_zero()

    @settings(max_examples=10)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_moving_the_split_changes_omega_by_a_coboundary(self, seed):
        rng = make_rng(seed)
        x = abelian_extension(rng)
        split = build_extension(x)
        kernel_idx = list(range(x.quotient.rank, split.total.rank))
        phi = random_linear_map(rng, split.quotient_module, split.kernel_module, 1)
        moved = perturb_split(split, phi)
        assert moved.check_split()
        before = extract_from_split(split.total, kernel_idx, split.split)
        after = extract_from_split(split.total, kernel_idx, moved.split)
        assert after.rep == before.rep
        shift = Cochain(PRELIE, 1, before.rep,
                        {(a,): list(phi.column(a).coeffs) for a in range(x.quotient.rank)})
        assert after.omega - before.omega == prelie_coboundary(shift)

    def test_split_must_be_a_section(self):
        split = build_extension(coordinate_extension())
        bad = LinearMap(split.quotient_module, split.total.module, [[0], [1]])
        with pytest.raises(SectionError):
            extract_from_split(split.total, [1], bad)


class TestEquivalence:
    @settings(max_examples=20)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_exact_difference_gives_equivalence(self, seed):
        rng = make_rng(seed)
        x0 = field_extension(rng)
        omega = prelie_coboundary(random_cochain(rng, x0.rep, PRELIE, 1))
        x = ExtensionData(x0.quotient, x0.kernel, x0.rep, omega)
        assert equivalence_decide_field(x0, x) is not None
        phi = coboundary_solve_field(x.omega - x0.omega)
        assert verify_equivalence(x0, x, phi).passed

    def test_non_exact_difference(self):
        quotient = PreLieAlgebraFD(("e",)).to_rinehart()
        rep = trivial_representation(quotient, FreeModule(QQ_RING, ("v",)))
        kernel = PreLieRinehartData(rep.target, {})
        x0 = ExtensionData(quotient, kernel, rep)
        x1 = ExtensionData(quotient, kernel, rep, Cochain(PRELIE, 2, rep, {(0, 0): [1]}))
        assert check_extension_conditions(x1).passed
        assert equivalence_decide_field(x0, x1) is None

    def test_wrong_phi_is_reported(self):
        quotient = PreLieAlgebraFD(("e",)).to_rinehart()
        rep = trivial_representation(quotient, FreeModule(QQ_RING, ("v",)))
        kernel = PreLieRinehartData(rep.target, {})
        x0 = ExtensionData(quotient, kernel, rep)
        x1 = ExtensionData(quotient, kernel, rep, Cochain(PRELIE, 2, rep, {(0, 0): [1]}))
        report = verify_equivalence(x0, x1, Cochain(PRELIE, 1, rep, {(0,): [1]}))
        assert not report.passed

    def test_polynomial_ring_is_refused(self):
        x = coordinate_extension()
        with pytest.raises(NotFieldCaseError):
            equivalence_decide_field(x, x)
