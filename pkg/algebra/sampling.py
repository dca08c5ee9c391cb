"""
Seeded random structures for the fuzz command and the property tests.

Every generator takes a random.Random so runs are reproducible from one seed;
structures are valid by construction and never need rejection sampling.
"""
import logging
import random
from typing import List, Optional, Sequence, Tuple

from algebra.coeffring import QQ_RING, Element, FreeModule, LinearMap, Poly, Ring, VectorField
from algebra.cohomology import (
    Cochain,
    RepresentationData,
    anchor_representation,
    canonical_keys,
    left_regular_representation,
    regular_representation,
    trivial_representation,
)
from algebra.rmatrix import RMatrix
from algebra.structures import (
    ActionData,
    LieAlgebraFD,
    PreLieAlgebraFD,
    PreLieRinehartData,
    change_basis,
    coordinate_algebra,
    transformation_algebra,
)
from config.settings import settings

logger = logging.getLogger(__name__)

COEFFS = (-2, -1, 1, 2)


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_monomial(rng: random.Random, ring: Ring, max_degree: Optional[int] = None) -> Poly:
    """Monic monomial of total degree at most max_degree"""
    max_degree = settings.PLRK_MAX_COEFF_DEGREE if max_degree is None else max_degree
    exps = [0] * ring.nvars
    for _ in range(rng.randint(0, max_degree) if ring.nvars else 0):
        exps[rng.randrange(ring.nvars)] += 1
    return ring.monomial(exps)


def random_poly(rng: random.Random, ring: Ring, max_degree: Optional[int] = None, terms: int = 2) -> Poly:
    out = ring.zero()
    for _ in range(rng.randint(0, terms)):
        out = out + rng.choice(COEFFS) * random_monomial(rng, ring, max_degree)
    return out


def random_vector_field(rng: random.Random, ring: Ring, max_degree: Optional[int] = None) -> VectorField:
    return VectorField(ring, [random_poly(rng, ring, max_degree) for _ in range(ring.nvars)])


def random_element(rng: random.Random, module: FreeModule, max_degree: Optional[int] = None) -> Element:
    return Element(module, [random_poly(rng, module.ring, max_degree) for _ in range(module.rank)])


def random_linear_map(rng: random.Random, domain: FreeModule, codomain: FreeModule,
                      max_degree: Optional[int] = None) -> LinearMap:
    rows = [[random_poly(rng, domain.ring, max_degree) for _ in range(domain.rank)] for _ in range(codomain.rank)]
    return LinearMap(domain, codomain, rows)


def random_unipotent(rng: random.Random, module: FreeModule,
                     max_degree: Optional[int] = None) -> Tuple[LinearMap, LinearMap]:
    """
    Upper unitriangular change of basis and its exact inverse

    Args:
        rng: Random source
        module: Module the maps act on
        max_degree: Degree bound of the off-diagonal entries

    Returns:
        (U, U^-1) with U = I + N and U^-1 = sum_k (-N)^k
    """
    n = module.rank
    ring = module.ring
    rows = [[ring.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                rows[i][j] = random_poly(rng, ring, max_degree, terms=1)
    nilpotent = LinearMap(module, module, rows)
    identity = LinearMap.identity(module)
    forward = identity + nilpotent
    inverse = identity
    power = identity
    for _ in range(1, n):
        power = (-1) * nilpotent.compose(power)
        inverse = inverse + power
    return forward, inverse


def _names(n: int) -> Tuple[str, ...]:
    return tuple(f"e{i + 1}" for i in range(n))


def _functional_prelie(a: Sequence[int]) -> PreLieAlgebraFD:
    """x.y = <a,x> y"""
    n = len(a)
    product = {}
    for i in range(n):
        for j in range(n):
            if a[i]:
                product[(i, j)] = [a[i] if k == j else 0 for k in range(n)]
    return PreLieAlgebraFD(_names(n), product)


def random_prelie_rinehart(rng: random.Random, ring: Ring, max_rank: Optional[int] = None,
                           max_degree: Optional[int] = None) -> PreLieRinehartData:
    """
    Either the transformation algebra of x.y = <a,x>y acting by <a,x>D, or a
    coordinate algebra of constant commuting fields, in a random unipotent basis
    """
    max_rank = max_rank or settings.PLRK_MAX_RANK
    n = rng.randint(1, max_rank)
    if rng.random() < 0.5 or ring.nvars == 0:
        a = [rng.randint(-2, 2) for _ in range(n)]
        d = random_vector_field(rng, ring, max_degree)
        action = ActionData(_functional_prelie(a), ring, [c * d for c in a])
        alg = transformation_algebra(action)
    else:
        fields = [VectorField(ring, [rng.randint(-2, 2) for _ in range(ring.nvars)]) for _ in range(n)]
        alg = coordinate_algebra(ring, fields, _names(n))
    forward, inverse = random_unipotent(rng, alg.module, max_degree)
    logger.debug("random pre-Lie-Rinehart algebra of rank %d", n)
    return change_basis(alg, forward, inverse)


def random_field_prelie(rng: random.Random, dim: Optional[int] = None) -> PreLieRinehartData:
    """x.y = <a,x> y over Q in a random rational unitriangular basis"""
    dim = dim or rng.randint(1, settings.PLRK_MAX_RANK)
    a = [rng.randint(-2, 2) for _ in range(dim)]
    alg = _functional_prelie(a).to_rinehart(QQ_RING)
    forward, inverse = random_unipotent(rng, alg.module, 0)
    return change_basis(alg, forward, inverse)


def random_representation(rng: random.Random, alg: PreLieRinehartData) -> RepresentationData:
    """Regular (left-regular once the anchor is nonzero), anchor or trivial"""
    choice = rng.choice(("regular", "anchor", "trivial"))
    if choice == "regular":
        if any(not vf.is_zero() for vf in alg.anchor):
            return left_regular_representation(alg)
        return regular_representation(alg)
    if choice == "anchor":
        return anchor_representation(alg)
    target = FreeModule(alg.ring, tuple(f"v{k + 1}" for k in range(rng.randint(1, 2))))
    return trivial_representation(alg, target)


def random_cochain(rng: random.Random, rep: RepresentationData, kind: str, degree: int,
                   max_degree: Optional[int] = None) -> Cochain:
    values = {}
    for key in canonical_keys(kind, degree, rep.algebra.rank):
        if rng.random() < 0.6:
            values[key] = random_element(rng, rep.target, max_degree)
    return Cochain(kind, degree, rep, values)


def random_rmatrix(rng: random.Random, algebra: LieAlgebraFD, values: Sequence[int] = range(-2, 3)) -> RMatrix:
    count = algebra.dim * (algebra.dim - 1) // 2
    return RMatrix.from_list(algebra, [rng.choice(list(values)) for _ in range(count)])


def random_monomial_triple(rng: random.Random, ring: Ring, max_degree: Optional[int] = None) -> List[Poly]:
    return [random_monomial(rng, ring, max_degree) for _ in range(3)]
