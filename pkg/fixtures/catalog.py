"""
The shipped structure corpus, built from kernel constructors

Each entry maps a file stem to a builder and the exit code `plrk verify`
returns on the written file.
"""
from typing import Any, Callable, Dict, NamedTuple

from algebra.coeffring import QQ_RING, DerivationPair, Element, FreeModule, LinearMap, Ring, VectorField
from algebra.cohomology import (
    PRELIE,
    Cochain,
    RepresentationData,
    anchor_representation,
    left_regular_representation,
    prelie_coboundary,
    semidirect_product,
    trivial_representation,
)
from algebra.crossed import CrossedExtensionData, CrossedModuleData, ideal_crossed_module
from algebra.extensions import ExtensionData
from algebra.rmatrix import RMatrix, sl2, sl2_action
from algebra.structures import (
    PreLieAlgebraFD,
    PreLieRinehartData,
    derivation_prelie,
    standard_coordinate_algebra,
    tensor_product_algebra,
)
from algebra.twoalg import crossed_to_strict, sub_adjacent_2, triple_to_skeletal
from serialization.codec import RMatrixInput

MALFORMED_TEXT = '{\n  "kind": "prelie_rinehart",\n  "basis": ["D1"],\n  "product": [{"key": [0, 3], "value": ["1"]}]\n}\n'


class Fixture(NamedTuple):
    build: Callable[[], Any]
    exit_code: int


def coordinate(n: int) -> PreLieRinehartData:
    """D_n over Q[x1..xn]"""
    return standard_coordinate_algebra(Ring(tuple(f"x{i + 1}" for i in range(n))))


def mutated_coordinate() -> PreLieRinehartData:
    """D_2 with D1.D2 := D2, which breaks the anchor law"""
    alg = coordinate(2)
    return PreLieRinehartData(alg.module, {(0, 1): alg.basis(1)}, alg.anchor)


def polynomial_line() -> PreLieRinehartData:
    ring = Ring(("t",))
    return derivation_prelie(ring, VectorField.partial(ring, 0))


def laurent_line() -> PreLieRinehartData:
    """A = Q[s, 1/s] with the Euler derivation s d/ds"""
    ring = Ring(("s",), laurent=True)
    return derivation_prelie(ring, VectorField(ring, [ring.var(0)]))


def functional_field_algebra() -> PreLieRinehartData:
    """e1.e_j = e_j over Q in dimension three"""
    return PreLieAlgebraFD(("e1", "e2", "e3"), {
        (0, 0): (1, 0, 0), (0, 1): (0, 1, 0), (0, 2): (0, 0, 1),
    }).to_rinehart(QQ_RING)


def coordinate_extension() -> ExtensionData:
    """D_1 by its anchor module, twisted by omega = delta(phi) with phi(D1) = x1^2"""
    quotient = coordinate(1)
    rep = anchor_representation(quotient)
    kernel = PreLieRinehartData(rep.target, {})
    x1 = quotient.ring.var(0)
    phi = Cochain(PRELIE, 1, rep, {(0,): Element(rep.target, [x1 * x1])})
    return ExtensionData(quotient, kernel, rep, prelie_coboundary(phi))


def ideal_crossed() -> CrossedModuleData:
    return ideal_crossed_module(functional_field_algebra(), [1, 2])


def nontrivial_crossed_extension() -> CrossedExtensionData:
    """
    E: X1.X2 = X2 + k; V = span(k', m) with d(k') = k, d(m) = 0,
    rho(X1)m = m, rho(X2)k' = m; quotient F: X1.X2 = X2 with kernel span(m)
    """
    ring = QQ_RING
    base_mod = FreeModule(ring, ("X1", "X2", "k"))
    base = PreLieRinehartData(base_mod, {(0, 1): Element(base_mod, [0, 1, 1])})
    top = FreeModule(ring, ("k'", "m"))
    zero = LinearMap.zero(top, top)
    rho1 = LinearMap(top, top, [[0, 0], [0, 1]])
    rho2 = LinearMap(top, top, [[0, 0], [1, 0]])
    no_symbol = VectorField.zero(ring)
    rep = RepresentationData(base, top, [
        DerivationPair(rho1, no_symbol), DerivationPair(rho2, no_symbol), DerivationPair(zero, no_symbol),
    ], [zero, zero, zero])
    boundary = LinearMap(top, base_mod, [[0, 0], [0, 0], [1, 0]])
    cm = CrossedModuleData(base, top, {}, boundary, rep)
    quot_mod = FreeModule(ring, ("X1", "X2"))
    quotient = PreLieRinehartData(quot_mod, {(0, 1): Element(quot_mod, [0, 1])})
    projection = LinearMap(base_mod, quot_mod, [[1, 0, 0], [0, 1, 0]])
    section = LinearMap(quot_mod, base_mod, [[1, 0], [0, 1], [0, 0]])
    image = FreeModule(ring, ("k",))
    sigma = LinearMap(image, top, [[1], [0]])
    kernel = FreeModule(ring, ("m",))
    inclusion = LinearMap(kernel, top, [[0], [1]])
    return CrossedExtensionData(cm, quotient, projection, section, [2], sigma, kernel, inclusion)


def _skeletal_rep():
    alg = functional_field_algebra()
    return alg, trivial_representation(alg, FreeModule(QQ_RING, ("v",)))


def skeletal_closed():
    """m3 = delta(psi) with psi(e1,e2) = psi(e2,e3) = v"""
    alg, rep = _skeletal_rep()
    psi = Cochain(PRELIE, 2, rep, {(0, 1): [1], (1, 2): [1]})
    return triple_to_skeletal(alg, rep, prelie_coboundary(psi))


def skeletal_open():
    """m3 = v at (e2, e3; e1), which is not closed"""
    alg, rep = _skeletal_rep()
    return triple_to_skeletal(alg, rep, Cochain(PRELIE, 3, rep, {(1, 2, 0): [1]}))


def sl2_rmatrix(values) -> RMatrixInput:
    lie = sl2()
    return RMatrixInput(lie, sl2_action(), RMatrix.from_list(lie, values))


CATALOG: Dict[str, Fixture] = {
    "d1": Fixture(lambda: coordinate(1), 0),
    "d2": Fixture(lambda: coordinate(2), 0),
    "d3": Fixture(lambda: coordinate(3), 0),
    "d2_mutated": Fixture(mutated_coordinate, 1),
    "polynomial_line": Fixture(polynomial_line, 0),
    "laurent_line": Fixture(laurent_line, 0),
    "tensor": Fixture(lambda: tensor_product_algebra(coordinate(1), laurent_line()), 0),
    "functional_field": Fixture(functional_field_algebra, 0),
    "regular_d2": Fixture(lambda: left_regular_representation(coordinate(2)), 0),
    "semidirect_d1": Fixture(lambda: semidirect_product(left_regular_representation(coordinate(1))), 0),
    "coboundary_d1": Fixture(lambda: coordinate_extension().omega, 0),
    "extension_d1": Fixture(coordinate_extension, 0),
    "sl2_lie": Fixture(sl2, 0),
    "sl2_action": Fixture(sl2_action, 0),
    "sl2_rmatrix_flat": Fixture(lambda: sl2_rmatrix([1, 1, 2]), 0),
    "sl2_rmatrix_curved": Fixture(lambda: sl2_rmatrix([0, 0, 1]), 1),
    "crossed_ideal": Fixture(ideal_crossed, 0),
    "crossed_extension": Fixture(nontrivial_crossed_extension, 0),
    "strict_two_algebra": Fixture(lambda: crossed_to_strict(ideal_crossed()), 0),
    "strict_lie_two_algebra": Fixture(lambda: sub_adjacent_2(crossed_to_strict(ideal_crossed())), 0),
    "skeletal_two_algebra": Fixture(skeletal_closed, 0),
    "skeletal_two_algebra_open": Fixture(skeletal_open, 1),
}

RAW_FIXTURES: Dict[str, Fixture] = {
    "malformed": Fixture(lambda: MALFORMED_TEXT, 2),
}


def expected_exit_codes() -> Dict[str, int]:
    codes = {name: f.exit_code for name, f in CATALOG.items()}
    codes.update({name: f.exit_code for name, f in RAW_FIXTURES.items()})
    return dict(sorted(codes.items()))
