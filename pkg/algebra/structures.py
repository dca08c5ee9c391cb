"""
Finite presentations of pre-Lie-Rinehart and Lie-Rinehart algebras by
structure constants and anchors, their verifiers and constructors.

Axioms are checked on basis elements only. With the anchor law in place the
difference (X,Y,Z) - (Y,X,Z) of associators is A-trilinear, so the verifier
checks the anchor law first and then associator symmetry on basis triples.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from algebra.coeffring import (
    QQ_RING,
    DerivationPair,
    Element,
    FreeModule,
    LinearMap,
    Poly,
    Ring,
    VectorField,
    parse_fraction,
)
from algebra.errors import (
    MalformedTableError,
    ModuleMismatchError,
    NonCommutingFieldsError,
    VerificationError,
)
from algebra.report import Report, ReportBuilder

logger = logging.getLogger(__name__)

Key = Tuple[int, ...]
Vector = Tuple[Fraction, ...]


def normalize_table(table: Mapping, target: FreeModule, bounds: Sequence[int]) -> Dict[Key, Element]:
    """
    Validate a structure table and drop its zero entries

    Args:
        table: Map from index tuples to Elements (or coefficient sequences)
        target: Module the values live in
        bounds: Exclusive upper bound for each index position

    Returns:
        Normalized table with integer keys and nonzero Element values
    """
    out: Dict[Key, Element] = {}
    for key, value in table.items():
        idx = tuple(int(k) for k in key)
        if len(idx) != len(bounds) or any(not 0 <= k < b for k, b in zip(idx, bounds)):
            raise MalformedTableError(f"index {idx} out of range {tuple(bounds)}")
        if not isinstance(value, Element):
            value = Element(target, value)
        if value.module != target:
            raise MalformedTableError(f"value at {idx} lies outside {target.basis_names}")
        if not value.is_zero():
            out[idx] = value
    return out


def _normalize_anchor(anchor: Sequence[VectorField], module: FreeModule) -> Tuple[VectorField, ...]:
    ring = module.ring
    if not anchor:
        return tuple(VectorField.zero(ring) for _ in range(module.rank))
    fields = tuple(anchor)
    if len(fields) != module.rank:
        raise MalformedTableError(f"{len(fields)} anchor fields for rank {module.rank}")
    for vf in fields:
        if vf.ring != ring:
            raise MalformedTableError("anchor field over a different ring")
    return fields


def _accumulate(module: FreeModule, acc: List[Poly], coeff: Poly, value: Element) -> None:
    for k, c in enumerate(value.coeffs):
        if c:
            acc[k] = acc[k] + coeff * c


class PreLieRinehartData:
    """Pre-Lie-Rinehart algebra on a free module, given on generators"""

    __slots__ = ("module", "product", "anchor")

    def __init__(self, module: FreeModule, product: Optional[Mapping] = None,
                 anchor: Sequence[VectorField] = ()):
        self.module = module
        self.product = normalize_table(product or {}, module, (module.rank, module.rank))
        self.anchor = _normalize_anchor(anchor, module)

    @property
    def ring(self) -> Ring:
        return self.module.ring

    @property
    def rank(self) -> int:
        return self.module.rank

    def basis(self, i: int) -> Element:
        return self.module.basis(i)

    def product_of(self, i: int, j: int) -> Element:
        return self.product.get((i, j)) or self.module.zero()

    def anchor_of(self, x: Element) -> VectorField:
        out = VectorField.zero(self.ring)
        for i in x.support():
            out = out + x[i] * self.anchor[i]
        return out

    def multiply(self, x: Element, y: Element) -> Element:
        """sum_ij a_i (b_j (e_i.e_j) + theta(e_i)(b_j) e_j)"""
        if x.module != self.module or y.module != self.module:
            raise ModuleMismatchError("product of elements outside the algebra")
        acc = [self.ring.zero()] * self.rank
        for i in x.support():
            a = x[i]
            for j in y.support():
                b = y[j]
                entry = self.product.get((i, j))
                if entry is not None:
                    _accumulate(self.module, acc, a * b, entry)
                db = self.anchor[i](b)
                if db:
                    acc[j] = acc[j] + a * db
        return Element(self.module, acc)

    def commutator(self, x: Element, y: Element) -> Element:
        return self.multiply(x, y) - self.multiply(y, x)

    def associator(self, x: Element, y: Element, z: Element) -> Element:
        return self.multiply(x, self.multiply(y, z)) - self.multiply(self.multiply(x, y), z)

    def left_multiplication(self, i: int) -> DerivationPair:
        """L_{e_i} as a derivation pair with symbol theta(e_i)"""
        cols = [self.product_of(i, j) for j in range(self.rank)]
        return DerivationPair(LinearMap.from_columns(self.module, self.module, cols), self.anchor[i])

    def right_multiplication(self, i: int) -> LinearMap:
        cols = [self.product_of(j, i) for j in range(self.rank)]
        return LinearMap.from_columns(self.module, self.module, cols)

    def __eq__(self, other):
        if not isinstance(other, PreLieRinehartData):
            return NotImplemented
        return (self.module, self.product, self.anchor) == (other.module, other.product, other.anchor)

    def __repr__(self):
        return f"PreLieRinehartData({self.module.basis_names}, ring={self.ring.variables})"


class LieRinehartData:
    """Lie-Rinehart algebra on a free module, given on generators"""

    __slots__ = ("module", "bracket_table", "anchor")

    def __init__(self, module: FreeModule, bracket: Optional[Mapping] = None,
                 anchor: Sequence[VectorField] = ()):
        self.module = module
        self.bracket_table = normalize_table(bracket or {}, module, (module.rank, module.rank))
        self.anchor = _normalize_anchor(anchor, module)

    @property
    def ring(self) -> Ring:
        return self.module.ring

    @property
    def rank(self) -> int:
        return self.module.rank

    def basis(self, i: int) -> Element:
        return self.module.basis(i)

    def bracket_of(self, i: int, j: int) -> Element:
        return self.bracket_table.get((i, j)) or self.module.zero()

    def anchor_of(self, x: Element) -> VectorField:
        out = VectorField.zero(self.ring)
        for i in x.support():
            out = out + x[i] * self.anchor[i]
        return out

    def bracket(self, x: Element, y: Element) -> Element:
        """[aX, bY] = ab[X,Y] + a theta(X)(b) Y - b theta(Y)(a) X on generators"""
        if x.module != self.module or y.module != self.module:
            raise ModuleMismatchError("bracket of elements outside the algebra")
        acc = [self.ring.zero()] * self.rank
        for i in x.support():
            a = x[i]
            for j in y.support():
                b = y[j]
                entry = self.bracket_table.get((i, j))
                if entry is not None:
                    _accumulate(self.module, acc, a * b, entry)
                db = self.anchor[i](b)
                if db:
                    acc[j] = acc[j] + a * db
                da = self.anchor[j](a)
                if da:
                    acc[i] = acc[i] - b * da
        return Element(self.module, acc)

    def __eq__(self, other):
        if not isinstance(other, LieRinehartData):
            return NotImplemented
        return (self.module, self.bracket_table, self.anchor) == (other.module, other.bracket_table, other.anchor)

    def __repr__(self):
        return f"LieRinehartData({self.module.basis_names}, ring={self.ring.variables})"


def _vector(values: Sequence, dim: int) -> Vector:
    vec = tuple(parse_fraction(v) if isinstance(v, str) else Fraction(v) for v in values)
    if len(vec) != dim:
        raise MalformedTableError(f"{len(vec)} coordinates for dimension {dim}")
    return vec


def _normalize_constants(table: Mapping, dim: int) -> Dict[Tuple[int, int], Vector]:
    out = {}
    for key, value in table.items():
        i, j = (int(k) for k in key)
        if not (0 <= i < dim and 0 <= j < dim):
            raise MalformedTableError(f"index {(i, j)} out of range for dimension {dim}")
        vec = _vector(value, dim)
        if any(vec):
            out[(i, j)] = vec
    return out


class PreLieAlgebraFD:
    """Finite-dimensional pre-Lie algebra over the rationals"""

    def __init__(self, basis_names: Sequence[str], product: Optional[Mapping] = None):
        self.basis_names = tuple(basis_names)
        self.product = _normalize_constants(product or {}, self.dim)

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def product_coeffs(self, i: int, j: int) -> Vector:
        return self.product.get((i, j), (Fraction(0),) * self.dim)

    def bracket_coeffs(self, i: int, j: int) -> Vector:
        return tuple(a - b for a, b in zip(self.product_coeffs(i, j), self.product_coeffs(j, i)))

    def to_rinehart(self, ring: Ring = QQ_RING) -> PreLieRinehartData:
        module = FreeModule(ring, self.basis_names)
        return PreLieRinehartData(module, {k: Element(module, v) for k, v in self.product.items()})

    def verify(self) -> Report:
        return verify_prelie_rinehart(self.to_rinehart(), title="pre-Lie algebra axioms")

    def __eq__(self, other):
        if not isinstance(other, PreLieAlgebraFD):
            return NotImplemented
        return (self.basis_names, self.product) == (other.basis_names, other.product)


class LieAlgebraFD:
    """Finite-dimensional Lie algebra over the rationals; bracket stored for i < j"""

    def __init__(self, basis_names: Sequence[str], bracket: Optional[Mapping] = None):
        self.basis_names = tuple(basis_names)
        raw = _normalize_constants(bracket or {}, self.dim)
        table: Dict[Tuple[int, int], Vector] = {}
        for (i, j), vec in raw.items():
            if i == j:
                raise MalformedTableError(f"bracket of e{i} with itself must vanish")
            key, val = ((i, j), vec) if i < j else ((j, i), tuple(-c for c in vec))
            if key in table and table[key] != val:
                raise MalformedTableError(f"bracket table is not antisymmetric at {key}")
            table[key] = val
        self.bracket = table

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def bracket_coeffs(self, i: int, j: int) -> Vector:
        zero = (Fraction(0),) * self.dim
        if i < j:
            return self.bracket.get((i, j), zero)
        if i > j:
            return tuple(-c for c in self.bracket.get((j, i), zero))
        return zero

    def bracket_vectors(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in enumerate(self.bracket_coeffs(i, j)):
                    if c:
                        out[k] += a * b * c
        return tuple(out)

    def to_rinehart(self, ring: Ring = QQ_RING) -> LieRinehartData:
        module = FreeModule(ring, self.basis_names)
        table = {}
        for i in range(self.dim):
            for j in range(self.dim):
                vec = self.bracket_coeffs(i, j)
                if any(vec):
                    table[(i, j)] = Element(module, vec)
        return LieRinehartData(module, table)

    def verify(self) -> Report:
        return verify_lie_rinehart(self.to_rinehart(), title="Lie algebra axioms")

    def __eq__(self, other):
        if not isinstance(other, LieAlgebraFD):
            return NotImplemented
        return (self.basis_names, self.bracket) == (other.basis_names, other.bracket)


class ActionData:
    """Action lambda of a (pre-)Lie algebra on a polynomial ring by vector fields"""

    def __init__(self, algebra: Union[PreLieAlgebraFD, LieAlgebraFD], ring: Ring,
                 images: Sequence[VectorField]):
        self.algebra = algebra
        self.ring = ring
        self.images = tuple(images)
        if len(self.images) != algebra.dim:
            raise MalformedTableError(f"{len(self.images)} fields for dimension {algebra.dim}")
        for vf in self.images:
            if vf.ring != ring:
                raise MalformedTableError("action field over a different ring")

    def of_vector(self, coeffs: Sequence[Fraction]) -> VectorField:
        out = VectorField.zero(self.ring)
        for c, vf in zip(coeffs, self.images):
            if c:
                out = out + Fraction(c) * vf
        return out

    def __eq__(self, other):
        if not isinstance(other, ActionData):
            return NotImplemented
        return (self.algebra, self.ring, self.images) == (other.algebra, other.ring, other.images)


# ----- verifiers -----

def verify_prelie_rinehart(alg: PreLieRinehartData, title: str = "pre-Lie-Rinehart axioms") -> Report:
    """
    Check the anchor law on basis pairs, then associator symmetry on basis triples

    Args:
        alg: Algebra given on generators

    Returns:
        Report with items anchor_law and associator_symmetry
    """
    logger.debug("verifying pre-Lie-Rinehart structure of rank %d", alg.rank)
    basis = [alg.basis(i) for i in range(alg.rank)]
    builder = ReportBuilder(title)
    builder.check("anchor_law", (
        ((i, j), alg.anchor_of(alg.commutator(basis[i], basis[j])) - alg.anchor[i].commutator(alg.anchor[j]))
        for i, j in combinations(range(alg.rank), 2)
    ))
    builder.check("associator_symmetry", (
        ((i, j, k), alg.associator(basis[i], basis[j], basis[k]) - alg.associator(basis[j], basis[i], basis[k]))
        for i, j in combinations(range(alg.rank), 2)
        for k in range(alg.rank)
    ))
    return builder.build()


def verify_lie_rinehart(alg: LieRinehartData, title: str = "Lie-Rinehart axioms") -> Report:
    basis = [alg.basis(i) for i in range(alg.rank)]
    builder = ReportBuilder(title)
    builder.check("antisymmetry", (
        ((i, j), alg.bracket_of(i, j) + alg.bracket_of(j, i))
        for i in range(alg.rank) for j in range(i, alg.rank)
    ))
    builder.check("anchor_law", (
        ((i, j), alg.anchor_of(alg.bracket_of(i, j)) - alg.anchor[i].commutator(alg.anchor[j]))
        for i, j in combinations(range(alg.rank), 2)
    ))

    def jacobi(i, j, k):
        x, y, z = basis[i], basis[j], basis[k]
        return (alg.bracket(x, alg.bracket(y, z)) + alg.bracket(y, alg.bracket(z, x))
                + alg.bracket(z, alg.bracket(x, y)))

    builder.check("jacobi", (((i, j, k), jacobi(i, j, k)) for i, j, k in combinations(range(alg.rank), 3)))
    return builder.build()


def check_action(action: ActionData) -> Report:
    """lambda(x.y - y.x) = [lambda(x), lambda(y)] on basis pairs"""
    algebra = action.algebra
    builder = ReportBuilder("action")
    builder.extend("algebra", algebra.verify())
    builder.check("action_morphism", (
        ((i, j), action.of_vector(algebra.bracket_coeffs(i, j)) - action.images[i].commutator(action.images[j]))
        for i, j in combinations(range(algebra.dim), 2)
    ))
    return builder.build()


def check_homomorphism(phi: LinearMap, source: PreLieRinehartData, target: PreLieRinehartData) -> Report:
    """phi(e_i.e_j) = phi(e_i).phi(e_j) and theta_target(phi(e_i)) = theta_source(e_i)"""
    if phi.domain != source.module or phi.codomain != target.module:
        raise ModuleMismatchError("map does not go between the given algebras")
    images = phi.columns()
    builder = ReportBuilder("homomorphism")
    builder.check("product", (
        ((i, j), phi(source.product_of(i, j)) - target.multiply(images[i], images[j]))
        for i in range(source.rank) for j in range(source.rank)
    ))
    builder.check("anchor", (
        ((i,), target.anchor_of(images[i]) - source.anchor[i]) for i in range(source.rank)
    ))
    return builder.build()


def _require(report: Report, what: str) -> None:
    if not report.passed:
        raise VerificationError(f"{what} fails verification", report)


# ----- constructors -----

def extend_product(alg: PreLieRinehartData, x: Element, y: Element) -> Element:
    return alg.multiply(x, y)


def sub_adjacent(alg: PreLieRinehartData, check: bool = True) -> LieRinehartData:
    """Commutator bracket with the same anchor"""
    if check:
        _require(verify_prelie_rinehart(alg), "pre-Lie-Rinehart algebra")
    table = {}
    for i in range(alg.rank):
        for j in range(alg.rank):
            if i != j:
                table[(i, j)] = alg.product_of(i, j) - alg.product_of(j, i)
    return LieRinehartData(alg.module, table, alg.anchor)


def coordinate_algebra(ring: Ring, fields: Sequence[VectorField],
                       names: Optional[Sequence[str]] = None) -> PreLieRinehartData:
    """
    (a X_i).(b X_j) = a X_i(b) X_j for pairwise commuting fields X_i

    Args:
        ring: Coefficient ring
        fields: Commuting vector fields, one per basis element
        names: Basis names, D1..Dn by default

    Returns:
        Pre-Lie-Rinehart algebra with zero product on generators and anchor X_i
    """
    fields = list(fields)
    for i, j in combinations(range(len(fields)), 2):
        if not fields[i].commutator(fields[j]).is_zero():
            raise NonCommutingFieldsError(f"fields {i} and {j} do not commute")
    names = tuple(names) if names else tuple(f"D{i + 1}" for i in range(len(fields)))
    return PreLieRinehartData(FreeModule(ring, names), {}, fields)


def standard_coordinate_algebra(ring: Ring) -> PreLieRinehartData:
    return coordinate_algebra(ring, [VectorField.partial(ring, i) for i in range(ring.nvars)])


def derivation_prelie(ring: Ring, d: VectorField) -> PreLieRinehartData:
    """x * y = x d(y) on A itself, anchor theta(x) = x d"""
    return coordinate_algebra(ring, [d], names=("e",))


def transformation_algebra(action: ActionData) -> PreLieRinehartData:
    """(a x).(b y) = ab x.y + a lambda(x)(b) y on A (x) g"""
    if not isinstance(action.algebra, PreLieAlgebraFD):
        raise MalformedTableError("transformation pre-Lie-Rinehart algebra needs a pre-Lie algebra")
    _require(check_action(action), "action")
    module = FreeModule(action.ring, action.algebra.basis_names)
    table = {k: Element(module, v) for k, v in action.algebra.product.items()}
    return PreLieRinehartData(module, table, action.images)


def transformation_lie_rinehart(action: ActionData) -> LieRinehartData:
    """[a x, b y] = ab [x,y] + a lambda(x)(b) y - b lambda(y)(a) x on A (x) g"""
    _require(check_action(action), "action")
    algebra = action.algebra
    module = FreeModule(action.ring, algebra.basis_names)
    table = {}
    for i in range(algebra.dim):
        for j in range(algebra.dim):
            vec = algebra.bracket_coeffs(i, j)
            if any(vec):
                table[(i, j)] = Element(module, vec)
    return LieRinehartData(module, table, action.images)


def transformation_lie_bracket(action: ActionData, x: Element, y: Element) -> Element:
    return transformation_lie_rinehart(action).bracket(x, y)


def embed_element(value: Element, module: FreeModule, offset: int) -> Element:
    """Place an element of a summand into a larger module, embedding coefficients"""
    ring = module.ring
    coeffs = [ring.zero()] * module.rank
    for k, c in enumerate(value.coeffs):
        coeffs[offset + k] = c.embed(ring)
    return Element(module, coeffs)


def derivation_extension(alg: PreLieRinehartData, dp: DerivationPair) -> PreLieRinehartData:
    """
    (a,X)*(b,Y) = (a delta(b), X.Y + a D(Y)) on A + E with anchor theta(a,X) = a delta

    Args:
        alg: Pre-Lie A-algebra (zero anchor)
        dp: Derivation (D, delta) of alg

    Returns:
        Pre-Lie-Rinehart algebra on A + E
    """
    if any(not vf.is_zero() for vf in alg.anchor):
        raise MalformedTableError("derivation extension needs a pre-Lie A-algebra with zero anchor")
    if dp.module != alg.module:
        raise ModuleMismatchError("derivation acts on another module")
    basis = [alg.basis(i) for i in range(alg.rank)]
    builder = ReportBuilder("derivation of pre-Lie A-algebra")
    builder.check("derivation_law", (
        ((i, j), dp(alg.product_of(i, j)) - alg.multiply(dp(basis[i]), basis[j]) - alg.multiply(basis[i], dp(basis[j])))
        for i in range(alg.rank) for j in range(alg.rank)
    ))
    _require(builder.build(), "derivation")
    ring = alg.ring
    module = FreeModule(ring, ("a",)).direct_sum(alg.module)
    table = {}
    for k in range(alg.rank):
        table[(0, k + 1)] = embed_element(dp(basis[k]), module, 1)
    for (i, j), value in alg.product.items():
        table[(i + 1, j + 1)] = embed_element(value, module, 1)
    anchor = [dp.symbol] + [VectorField.zero(ring)] * alg.rank
    return PreLieRinehartData(module, table, anchor)


def tensor_product_algebra(e1: PreLieRinehartData, e2: PreLieRinehartData) -> PreLieRinehartData:
    """(E1 (x) A2) + (A1 (x) E2) over A1 (x) A2; cross products of generators vanish"""
    _require(verify_prelie_rinehart(e1), "first factor")
    _require(verify_prelie_rinehart(e2), "second factor")
    ring = e1.ring.tensor(e2.ring)
    module = e1.module.with_ring(ring).direct_sum(e2.module.with_ring(ring))
    table = {}
    for (i, j), value in e1.product.items():
        table[(i, j)] = embed_element(value, module, 0)
    off = e1.rank
    for (i, j), value in e2.product.items():
        table[(i + off, j + off)] = embed_element(value, module, off)
    anchor = [vf.embed(ring) for vf in e1.anchor] + [vf.embed(ring) for vf in e2.anchor]
    return PreLieRinehartData(module, table, anchor)


def change_basis(alg: PreLieRinehartData, forward: LinearMap, inverse: LinearMap) -> PreLieRinehartData:
    """
    Rewrite an algebra in the basis f_i = forward(e_i)

    Args:
        alg: Algebra in the old basis
        forward: Columns are the new basis vectors in old coordinates
        inverse: Inverse of forward

    Returns:
        Isomorphic algebra on the same module names
    """
    new_basis = forward.columns()
    table = {}
    for i in range(alg.rank):
        for j in range(alg.rank):
            table[(i, j)] = inverse(alg.multiply(new_basis[i], new_basis[j]))
    anchor = [alg.anchor_of(f) for f in new_basis]
    return PreLieRinehartData(alg.module, table, anchor)
