import pytest
from hypothesis import example, given, settings, strategies as st

from algebra.coeffring import FreeModule, LinearMap, QQ_RING, Ring
from algebra.cohomology import PRELIE, Cochain, cocycle_check, prelie_coboundary, trivial_representation
from algebra.crossed import ideal_crossed_module, sub_adjacent_crossed, zero_boundary_crossed_module
from algebra.errors import MalformedTableError, NotSkeletalError, NotStrictError, VerificationError
from algebra.report import Status
from algebra.sampling import make_rng, random_cochain, random_prelie_rinehart, random_representation
from algebra.twoalg import (
    PreLie2Data,
    crossed_to_strict,
    lie_crossed_to_strict,
    skeletal_to_triple,
    strict_to_crossed,
    sub_adjacent_2,
    triple_to_skeletal,
    verify_lie2,
    verify_prelie2,
)
from fixtures.catalog import functional_field_algebra, ideal_crossed, skeletal_closed, skeletal_open


def skeletal_setup():
    alg = functional_field_algebra()
    return alg, trivial_representation(alg, FreeModule(QQ_RING, ("v",)))


def random_crossed(seed):
    rng = make_rng(seed)
    alg = random_prelie_rinehart(rng, Ring(("x1",)), max_degree=1)
    return zero_boundary_crossed_module(random_representation(rng, alg))


class TestStrict:
    def test_crossed_module_gives_strict_algebra(self):
        x = crossed_to_strict(ideal_crossed())
        assert x.is_strict
        assert not x.is_skeletal
        assert verify_prelie2(x).passed

    @settings(max_examples=10)
    @given(st.integers(min_value=0, max_value=100_000))
    @example(188)
    def test_round_trip_through_crossed_modules(self, seed):
        cm = random_crossed(seed)
        x = crossed_to_strict(cm)
        assert verify_prelie2(x).passed
        assert strict_to_crossed(x) == cm
        assert crossed_to_strict(strict_to_crossed(x)) == x

    def test_ideal_round_trip(self):
        cm = ideal_crossed()
        assert strict_to_crossed(crossed_to_strict(cm)) == cm

    def test_top_product_comes_from_the_boundary(self):
        cm = ideal_crossed_module(functional_field_algebra(), [0, 1, 2])
        back = strict_to_crossed(crossed_to_strict(cm))
        e1, e2 = cm.top.basis(0), cm.top.basis(1)
        assert back.top_multiply(e1, e2) == e2

    def test_non_strict_input(self):
        with pytest.raises(NotStrictError):
            strict_to_crossed(skeletal_open(), check=False)


class TestSubAdjacent2:
    def test_strict_sub_adjacent_passes(self):
        lie2 = sub_adjacent_2(crossed_to_strict(ideal_crossed()))
        assert verify_lie2(lie2).passed

    def test_commutes_with_sub_adjacent_crossed_modules(self):
        cm = ideal_crossed()
        lcm, report = sub_adjacent_crossed(cm)
        assert report.passed
        assert sub_adjacent_2(crossed_to_strict(cm)) == lie_crossed_to_strict(lcm)

    def test_skeletal_sub_adjacent_passes(self):
        lie2 = sub_adjacent_2(skeletal_closed())
        assert verify_lie2(lie2).passed

    def test_refuses_failing_input(self):
        with pytest.raises(VerificationError):
            sub_adjacent_2(skeletal_open())


class TestSkeletal:
    @settings(max_examples=10)
    @given(st.integers(min_value=0, max_value=100_000))
    def test_closed_candidates_pass(self, seed):
        alg, rep = skeletal_setup()
        m3 = prelie_coboundary(random_cochain(make_rng(seed), rep, PRELIE, 2))
        x = triple_to_skeletal(alg, rep, m3)
        assert x.is_skeletal
        assert cocycle_check(m3).passed
        assert verify_prelie2(x).passed

    @settings(max_examples=10)
    @given(st.integers(min_value=0, max_value=100_000), st.sampled_from([-2, -1, 1, 2]))
    def test_open_candidates_fail(self, seed, t):
        alg, rep = skeletal_setup()
        closed = prelie_coboundary(random_cochain(make_rng(seed), rep, PRELIE, 2))
        m3 = closed + t * Cochain(PRELIE, 3, rep, {(1, 2, 0): [1]})
        report = verify_prelie2(triple_to_skeletal(alg, rep, m3))
        assert not cocycle_check(m3).passed
        assert report.status_of("f") == Status.FAIL
        assert report.status_of("e1") == Status.PASS

    def test_triple_round_trip(self):
        alg, rep = skeletal_setup()
        m3 = prelie_coboundary(Cochain(PRELIE, 2, rep, {(0, 1): [1], (1, 2): [1]}))
        assert skeletal_to_triple(triple_to_skeletal(alg, rep, m3)) == (alg, rep, m3)

    def test_fixture_cochain_is_closed(self):
        _, _, m3 = skeletal_to_triple(skeletal_closed())
        assert cocycle_check(m3).passed

    def test_non_skeletal_input(self):
        with pytest.raises(NotSkeletalError):
            skeletal_to_triple(crossed_to_strict(ideal_crossed()))

    def test_open_fixture_is_refused(self):
        with pytest.raises(VerificationError):
            skeletal_to_triple(skeletal_open())


class TestTables:
    def test_m3_keys_need_ordered_wedge(self):
        p0 = FreeModule(QQ_RING, ("e1", "e2"))
        p1 = FreeModule(QQ_RING, ("v",))
        with pytest.raises(MalformedTableError):
            PreLie2Data(p0, p1, LinearMap.zero(p1, p0), m3={(1, 0, 0): [1]})

    def test_m3_is_skew_in_the_wedge(self):
        x = skeletal_open()
        assert x.m3_value(2, 1, 0) == -x.m3_value(1, 2, 0)
        assert x.m3_value(1, 1, 0).is_zero()
