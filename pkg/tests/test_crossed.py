import pytest
from hypothesis import given, settings, strategies as st

from algebra.coeffring import Element, LinearMap, Ring
from algebra.cohomology import PRELIE, Cochain, RepresentationData, check_representation, cocycle_check, prelie_coboundary
from algebra.crossed import (
    CrossedExtensionData,
    CrossedModuleData,
    check_crossed_extension,
    ideal_crossed_module,
    induced_kernel_representation,
    section_change_cochain,
    sub_adjacent_crossed,
    three_cocycle_from_extension,
    total_algebra,
    verify_crossed_module,
    zero_boundary_crossed_module,
)
from algebra.errors import KernelImageError, VerificationError
from algebra.report import Status
from algebra.sampling import make_rng, random_prelie_rinehart, random_representation
from algebra.structures import PreLieRinehartData, verify_prelie_rinehart
from fixtures.catalog import coordinate, functional_field_algebra, ideal_crossed, nontrivial_crossed_extension


def split_crossed_extension() -> CrossedExtensionData:
    """The fixture extension with X1.X2 = X2 in the base, so the section is a homomorphism"""
    xd = nontrivial_crossed_extension()
    cm = xd.cm
    base_mod = cm.base.module
    base = PreLieRinehartData(base_mod, {(0, 1): base_mod.basis(1)})
    rep = RepresentationData(base, cm.top, cm.rep.rho, cm.rep.mu)
    split_cm = CrossedModuleData(base, cm.top, {}, cm.boundary, rep)
    return CrossedExtensionData(split_cm, xd.quotient, xd.projection, xd.section, xd.image_indices,
                                xd.sigma, xd.kernel_basis, xd.kernel_inclusion)


class TestCrossedModules:
    def test_ideal_inclusion(self):
        cm = ideal_crossed()
        assert cm.top.basis_names == ("e2", "e3")
        assert verify_crossed_module(cm).passed

    def test_broken_peiffer_identity(self):
        cm = ideal_crossed()
        broken = CrossedModuleData(cm.base, cm.top, {(0, 0): cm.top.basis(0)}, cm.boundary, cm.rep)
        report = verify_crossed_module(broken)
        assert report.status_of("peiffer_left") == Status.FAIL
        assert report.item("peiffer_left").witness.indices == [0, 0]

    def test_ideal_must_have_zero_anchor(self):
        with pytest.raises(KernelImageError):
            ideal_crossed_module(coordinate(2), [1])

    @settings(max_examples=20)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_zero_boundary(self, seed):
        rng = make_rng(seed)
        alg = random_prelie_rinehart(rng, Ring(("x1",)), max_degree=1)
        cm = zero_boundary_crossed_module(random_representation(rng, alg))
        assert verify_crossed_module(cm).passed
        assert verify_prelie_rinehart(total_algebra(cm)).passed

    def test_total_algebra(self):
        total = total_algebra(ideal_crossed())
        assert total.module.basis_names == ("e1", "e2", "e3", "e2'", "e3'")
        assert verify_prelie_rinehart(total).passed

    def test_total_algebra_refuses_failing_input(self):
        cm = ideal_crossed()
        broken = CrossedModuleData(cm.base, cm.top, {(0, 0): cm.top.basis(0)}, cm.boundary, cm.rep)
        with pytest.raises(VerificationError):
            total_algebra(broken)


class TestSubAdjacentCrossed:
    @pytest.mark.parametrize("build", [ideal_crossed, lambda: nontrivial_crossed_extension().cm])
    def test_lie_crossed_module_passes(self, build):
        lcm, report = sub_adjacent_crossed(build())
        assert report.passed
        assert not lcm.rep.is_prelie

    def test_bracket_is_the_commutator(self):
        base = functional_field_algebra()
        cm = ideal_crossed_module(base, [0, 1, 2])
        lcm, _ = sub_adjacent_crossed(cm)
        e1, e2 = cm.top.basis(0), cm.top.basis(1)
        assert lcm.top_algebra.bracket(e1, e2) == e2


class TestCrossedExtensions:
    def test_fixture_extension_is_exact(self):
        assert check_crossed_extension(nontrivial_crossed_extension()).passed

    def test_three_cocycle(self):
        xd = nontrivial_crossed_extension()
        f = three_cocycle_from_extension(xd)
        assert f == Cochain(PRELIE, 3, f.rep, {(0, 1, 1): [-1]})
        assert cocycle_check(f).passed

    def test_kernel_representation(self):
        rep = induced_kernel_representation(nontrivial_crossed_extension())
        assert rep.target.basis_names == ("m",)
        assert check_representation(rep).passed
        assert rep.rho[0].linear_part == LinearMap.identity(rep.target)

    def test_split_extension_has_zero_cocycle(self):
        xd = split_crossed_extension()
        assert check_crossed_extension(xd).passed
        assert three_cocycle_from_extension(xd).is_zero()

    def test_changing_the_section(self):
        xd = nontrivial_crossed_extension()
        phi = LinearMap(xd.quotient.module, xd.cm.top, [[1, 0], [0, 0]])
        s_tilde = xd.section + xd.cm.boundary.compose(phi)
        moved = xd.with_section(s_tilde)
        assert check_crossed_extension(moved).passed
        change = section_change_cochain(xd, s_tilde, phi)
        assert change == Cochain(PRELIE, 2, change.rep, {(1, 0): [-1]})
        f, f_tilde = three_cocycle_from_extension(xd), three_cocycle_from_extension(moved)
        assert f_tilde - f == prelie_coboundary(change)

    def test_section_must_differ_by_the_boundary(self):
        xd = nontrivial_crossed_extension()
        phi = LinearMap(xd.quotient.module, xd.cm.top, [[1, 0], [0, 0]])
        with pytest.raises(KernelImageError):
            section_change_cochain(xd, xd.section, phi)

    def test_wrong_section_is_reported(self):
        xd = nontrivial_crossed_extension()
        bad = LinearMap(xd.quotient.module, xd.cm.base.module, [[0, 1], [1, 0], [0, 0]])
        report = check_crossed_extension(xd.with_section(bad))
        assert report.status_of("section") == Status.FAIL

    def test_kernel_coordinates(self):
        xd = nontrivial_crossed_extension()
        m = xd.cm.top.basis(1)
        assert xd.kernel_coords(3 * m) == Element(xd.kernel_basis, [3])
        with pytest.raises(KernelImageError):
            xd.kernel_coords(xd.cm.top.basis(0))
