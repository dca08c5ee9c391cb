"""
Representations, the two cochain complexes and their coboundaries, the induced
representation on C^1 and the currying isomorphism between the complexes.

Cochain tables are stored on canonical index tuples only:
  prelie degree n: (i_1 < ... < i_{n-1}, j) for Hom_A(wedge^{n-1} E (x) E, V)
  lie degree n:    (i_1 < ... < i_n)         for Hom_A(wedge^n E, V)
Evaluation on arbitrary elements is A-multilinear.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from algebra.coeffring import DerivationPair, Element, FreeModule, LinearMap, VectorField
from algebra.errors import (
    CochainDegreeError,
    MalformedTableError,
    ModuleMismatchError,
    NotFieldCaseError,
    UnsupportedError,
    VerificationError,
)
from algebra.linalg import rank, solve, sort_with_sign
from algebra.report import Report, ReportBuilder
from algebra.structures import (
    LieRinehartData,
    PreLieRinehartData,
    embed_element,
    normalize_table,
    sub_adjacent,
)

logger = logging.getLogger(__name__)

AlgebraData = Union[PreLieRinehartData, LieRinehartData]
PRELIE = "prelie"
LIE = "lie"


def bracket(alg: AlgebraData, x: Element, y: Element) -> Element:
    """Lie bracket, or the commutator of a pre-Lie product"""
    if isinstance(alg, PreLieRinehartData):
        return alg.commutator(x, y)
    return alg.bracket(x, y)


class RepresentationData:
    """
    Representation (V; rho, mu) of a pre-Lie-Rinehart algebra, or (V; rho) of a
    Lie-Rinehart algebra when mu is None.

    rho[i] is a derivation pair of V with symbol theta(e_i); mu[i] is A-linear.
    """

    def __init__(self, algebra: AlgebraData, target: FreeModule, rho: Sequence[DerivationPair],
                 mu: Optional[Sequence[LinearMap]] = None, origin: Optional["RepresentationData"] = None):
        if target.ring != algebra.ring:
            raise ModuleMismatchError("representation space over another ring")
        self.algebra = algebra
        self.target = target
        self.rho = tuple(rho)
        self.mu = tuple(mu) if mu is not None else None
        self.origin = origin
        if len(self.rho) != algebra.rank:
            raise MalformedTableError(f"{len(self.rho)} rho values for rank {algebra.rank}")
        for dp in self.rho:
            if dp.module != target:
                raise ModuleMismatchError("rho value acts on another module")
        if self.mu is not None:
            if isinstance(algebra, LieRinehartData):
                raise MalformedTableError("a Lie-Rinehart representation carries no mu")
            if len(self.mu) != algebra.rank:
                raise MalformedTableError(f"{len(self.mu)} mu values for rank {algebra.rank}")
            for f in self.mu:
                if f.domain != target or f.codomain != target:
                    raise ModuleMismatchError("mu value acts on another module")

    @property
    def is_prelie(self) -> bool:
        return self.mu is not None

    @property
    def ring(self):
        return self.algebra.ring

    def rho_of(self, x: Element) -> DerivationPair:
        out = DerivationPair.zero(self.target)
        for i in x.support():
            out = out + x[i] * self.rho[i]
        return out

    def mu_of(self, x: Element) -> LinearMap:
        out = LinearMap.zero(self.target, self.target)
        if self.mu is None:
            return out
        for i in x.support():
            out = out + x[i] * self.mu[i]
        return out

    def act(self, x: Element, u: Element) -> Element:
        return self.rho_of(x)(u)

    def right_act(self, x: Element, u: Element) -> Element:
        return self.mu_of(x)(u)

    def __eq__(self, other):
        if not isinstance(other, RepresentationData):
            return NotImplemented
        return (self.algebra, self.target, self.rho, self.mu) == (other.algebra, other.target, other.rho, other.mu)

    def __repr__(self):
        kind = PRELIE if self.is_prelie else LIE
        return f"RepresentationData({kind}, target={self.target.basis_names})"


def check_representation(rep: RepresentationData) -> Report:
    """
    Symbol, gauge-homomorphism and (for pre-Lie data) mu conditions on basis pairs

    Args:
        rep: Representation to check

    Returns:
        Report with items symbol, gauge_homomorphism and mu_condition
    """
    alg = rep.algebra
    n = alg.rank
    basis = [alg.basis(i) for i in range(n)]
    builder = ReportBuilder("representation")
    builder.check("symbol", (((i,), rep.rho[i].symbol - alg.anchor[i]) for i in range(n)))
    builder.check("gauge_homomorphism", (
        ((i, j), rep.rho_of(bracket(alg, basis[i], basis[j])) - rep.rho[i].commutator(rep.rho[j]))
        for i, j in combinations(range(n), 2)
    ))
    if rep.is_prelie:
        targets = [rep.target.basis(k) for k in range(rep.target.rank)]

        def mu_condition(i, j, k):
            u = targets[k]
            rho_i, mu_i, mu_j = rep.rho[i], rep.mu[i], rep.mu[j]
            return (rho_i(mu_j(u)) - mu_j(rho_i(u))
                    - rep.mu_of(alg.product_of(i, j))(u) + mu_j(mu_i(u)))

        builder.check("mu_condition", (
            ((i, j, k), mu_condition(i, j, k))
            for i in range(n) for j in range(n) for k in range(len(targets))
        ))
    return builder.build()


def _require(report: Report, what: str) -> None:
    if not report.passed:
        raise VerificationError(f"{what} fails verification", report)


# ----- standard representations -----

def regular_representation(alg: PreLieRinehartData) -> RepresentationData:
    """
    (E; L, R), only for a zero anchor

    R_{aY}X = a X.Y + theta(X)(a) Y, so right multiplication is A-linear only
    when theta vanishes; anchored algebras get left_regular_representation.
    """
    if any(not vf.is_zero() for vf in alg.anchor):
        raise UnsupportedError("right multiplication is not A-linear for a nonzero anchor")
    rho = [alg.left_multiplication(i) for i in range(alg.rank)]
    mu = [alg.right_multiplication(i) for i in range(alg.rank)]
    return RepresentationData(alg, alg.module, rho, mu)


def left_regular_representation(alg: PreLieRinehartData) -> RepresentationData:
    """(E; L, 0) from the left-multiplication representation of the sub-adjacent algebra"""
    rho = [alg.left_multiplication(i) for i in range(alg.rank)]
    return RepresentationData(alg, alg.module, rho, [LinearMap.zero(alg.module, alg.module)] * alg.rank)


def trivial_representation(alg: AlgebraData, target: FreeModule) -> RepresentationData:
    """rho(X)(a u_k) = theta(X)(a) u_k and mu = 0"""
    if target.ring != alg.ring:
        target = target.with_ring(alg.ring)
    rho = [DerivationPair(LinearMap.zero(target, target), vf) for vf in alg.anchor]
    mu = None
    if isinstance(alg, PreLieRinehartData):
        mu = [LinearMap.zero(target, target)] * alg.rank
    return RepresentationData(alg, target, rho, mu)


def anchor_representation(alg: AlgebraData) -> RepresentationData:
    """(A; theta, 0)"""
    return trivial_representation(alg, FreeModule(alg.ring, ("1",)))


def sub_adjacent_representation(rep: RepresentationData, use_mu: bool = False) -> RepresentationData:
    """(V; rho) or (V; rho - mu) over the sub-adjacent Lie-Rinehart algebra"""
    if not rep.is_prelie:
        raise MalformedTableError("sub-adjacent representation needs pre-Lie data")
    lie = sub_adjacent(rep.algebra, check=False)
    rho = [r - m for r, m in zip(rep.rho, rep.mu)] if use_mu else list(rep.rho)
    return RepresentationData(lie, rep.target, rho)


def semidirect_product(rep: RepresentationData, top_product: Optional[Mapping] = None,
                       omega: Optional["Cochain"] = None) -> PreLieRinehartData:
    """
    X.Y + omega(X,Y) + rho(X)v + mu(Y)u + u.v on E + V, anchor theta(X + u) = theta(X)

    Args:
        rep: Pre-Lie representation of E on V
        top_product: Optional product table (k, l) -> element of V
        omega: Optional prelie 2-cochain valued in V

    Returns:
        Pre-Lie-Rinehart structure on the direct sum
    """
    if not rep.is_prelie:
        raise MalformedTableError("semidirect product needs a pre-Lie representation")
    alg = rep.algebra
    n, r = alg.rank, rep.target.rank
    module = alg.module.direct_sum(rep.target)
    top = normalize_table(top_product or {}, rep.target, (r, r))
    if omega is not None and (omega.kind != PRELIE or omega.degree != 2 or omega.rep.target != rep.target):
        raise CochainDegreeError("twisting cochain must be a prelie 2-cochain valued in the same module")
    table = {}
    for i in range(n):
        for j in range(n):
            value = embed_element(alg.product_of(i, j), module, 0)
            if omega is not None:
                value = value + embed_element(omega.value((i, j)), module, n)
            table[(i, j)] = value
        for k in range(r):
            table[(i, n + k)] = embed_element(rep.rho[i].linear_part.column(k), module, n)
            table[(n + k, i)] = embed_element(rep.mu[i].column(k), module, n)
    for (k, l), value in top.items():
        table[(n + k, n + l)] = embed_element(value, module, n)
    anchor = list(alg.anchor) + [VectorField.zero(alg.ring)] * r
    return PreLieRinehartData(module, table, anchor)


# ----- cochains -----

def canonical_keys(kind: str, degree: int, n: int) -> Iterator[Tuple[int, ...]]:
    if kind == PRELIE:
        for wedge in combinations(range(n), degree - 1):
            for j in range(n):
                yield wedge + (j,)
    else:
        yield from combinations(range(n), degree)


def _check_degree(kind: str, degree: int) -> None:
    if kind not in (PRELIE, LIE):
        raise MalformedTableError(f"unknown cochain kind {kind!r}")
    if degree < (1 if kind == PRELIE else 0):
        raise CochainDegreeError(f"{kind} cochains start in degree {1 if kind == PRELIE else 0}")


class Cochain:
    """A-multilinear cochain stored on canonical index tuples"""

    def __init__(self, kind: str, degree: int, rep: RepresentationData, values: Optional[Mapping] = None):
        _check_degree(kind, degree)
        n = rep.algebra.rank
        table = normalize_table(values or {}, rep.target, (n,) * degree)
        for key in table:
            wedge = key[:-1] if kind == PRELIE else key
            if any(a >= b for a, b in zip(wedge, wedge[1:])):
                raise MalformedTableError(f"cochain key {key} is not canonical")
        self.kind = kind
        self.degree = degree
        self.rep = rep
        self.values: Dict[Tuple[int, ...], Element] = table

    @classmethod
    def zero(cls, kind: str, degree: int, rep: RepresentationData) -> "Cochain":
        return cls(kind, degree, rep)

    def keys(self) -> Iterator[Tuple[int, ...]]:
        return canonical_keys(self.kind, self.degree, self.rep.algebra.rank)

    def value(self, indices: Sequence[int]) -> Element:
        """Value on basis elements in any order, signs from the wedge slots"""
        key = tuple(indices)
        wedge, tail = (key[:-1], key[-1:]) if self.kind == PRELIE else (key, ())
        if len(set(wedge)) < len(wedge):
            return self.rep.target.zero()
        ordered, sign = sort_with_sign(wedge)
        value = self.values.get(ordered + tail)
        if value is None:
            return self.rep.target.zero()
        return value if sign > 0 else -value

    def evaluate(self, args: Sequence[Element]) -> Element:
        if len(args) != self.degree:
            raise CochainDegreeError(f"{len(args)} arguments for a degree {self.degree} cochain")
        out = self.rep.target.zero()
        for choice in product(*(a.support() for a in args)):
            value = self.value(choice)
            if value.is_zero():
                continue
            coeff = self.rep.ring.one()
            for arg, idx in zip(args, choice):
                coeff = coeff * arg[idx]
            out = out + coeff * value
        return out

    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        keys = set(self.values) | set(other.values)
        return Cochain(self.kind, self.degree, self.rep,
                       {k: self.value(k) + other.value(k) for k in keys})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def __neg__(self) -> "Cochain":
        return Cochain(self.kind, self.degree, self.rep, {k: -v for k, v in self.values.items()})

    def __rmul__(self, scalar) -> "Cochain":
        return Cochain(self.kind, self.degree, self.rep, {k: scalar * v for k, v in self.values.items()})

    def _check(self, other):
        if not isinstance(other, Cochain) or (other.kind, other.degree) != (self.kind, self.degree) \
                or other.rep != self.rep:
            raise ModuleMismatchError("cochains of different kind, degree or representation")

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.kind, self.degree, self.values) == (other.kind, other.degree, other.values) \
            and self.rep == other.rep

    def __str__(self) -> str:
        parts = [f"{k}: {v}" for k, v in sorted(self.values.items())]
        return "{" + ", ".join(parts) + "}"

    __repr__ = __str__


def _omit(seq: Sequence, *positions: int) -> List:
    return [x for p, x in enumerate(seq) if p not in positions]


def prelie_coboundary_at(phi: Cochain, args: Sequence[Element]) -> Element:
    """
    delta(phi)(X_1, ..., X_{n+1}) on arbitrary elements

      sum_i (-1)^{i+1} rho(X_i) phi(.. ^X_i .., X_{n+1})
    + sum_i (-1)^{i+1} mu(X_{n+1}) phi(.. ^X_i .., X_i)
    - sum_i (-1)^{i+1} phi(.. ^X_i .., X_i . X_{n+1})
    + sum_{i<j} (-1)^{i+j} phi([X_i, X_j], .. ^X_i .. ^X_j .., X_{n+1})
    """
    rep = phi.rep
    alg = rep.algebra
    n = phi.degree
    if len(args) != n + 1:
        raise CochainDegreeError(f"{len(args)} arguments for the coboundary of a degree {n} cochain")
    wedge, last = list(args[:-1]), args[-1]
    mu_last = rep.mu_of(last)
    out = rep.target.zero()
    for i in range(n):
        sign = 1 if i % 2 == 0 else -1
        rest = _omit(wedge, i)
        term = (rep.rho_of(wedge[i])(phi.evaluate(rest + [last]))
                + mu_last(phi.evaluate(rest + [wedge[i]]))
                - phi.evaluate(rest + [alg.multiply(wedge[i], last)]))
        out = out + term if sign > 0 else out - term
    for i, j in combinations(range(n), 2):
        sign = 1 if (i + j) % 2 == 0 else -1
        term = phi.evaluate([bracket(alg, wedge[i], wedge[j])] + _omit(wedge, i, j) + [last])
        out = out + term if sign > 0 else out - term
    return out


def lie_coboundary_at(w: Cochain, args: Sequence[Element]) -> Element:
    """d w(X_1..X_{k+1}) = sum (-1)^{i+1} rho(X_i) w(..^X_i..) + sum_{i<j} (-1)^{i+j} w([X_i,X_j], ..)"""
    rep = w.rep
    alg = rep.algebra
    k = w.degree
    if len(args) != k + 1:
        raise CochainDegreeError(f"{len(args)} arguments for the coboundary of a degree {k} cochain")
    args = list(args)
    out = rep.target.zero()
    for i in range(k + 1):
        term = rep.rho_of(args[i])(w.evaluate(_omit(args, i)))
        out = out + term if i % 2 == 0 else out - term
    for i, j in combinations(range(k + 1), 2):
        term = w.evaluate([bracket(alg, args[i], args[j])] + _omit(args, i, j))
        out = out + term if (i + j) % 2 == 0 else out - term
    return out


def prelie_coboundary(phi: Cochain) -> Cochain:
    if phi.kind != PRELIE:
        raise CochainDegreeError("prelie coboundary applied to a lie cochain")
    alg = phi.rep.algebra
    basis = [alg.basis(i) for i in range(alg.rank)]
    values = {key: prelie_coboundary_at(phi, [basis[i] for i in key])
              for key in canonical_keys(PRELIE, phi.degree + 1, alg.rank)}
    return Cochain(PRELIE, phi.degree + 1, phi.rep, values)


def lie_coboundary(w: Cochain) -> Cochain:
    if w.kind != LIE:
        raise CochainDegreeError("lie coboundary applied to a prelie cochain")
    alg = w.rep.algebra
    basis = [alg.basis(i) for i in range(alg.rank)]
    values = {key: lie_coboundary_at(w, [basis[i] for i in key])
              for key in canonical_keys(LIE, w.degree + 1, alg.rank)}
    return Cochain(LIE, w.degree + 1, w.rep, values)


def coboundary(c: Cochain) -> Cochain:
    return prelie_coboundary(c) if c.kind == PRELIE else lie_coboundary(c)


# ----- induced representation on C^1 and the currying isomorphism -----

def c1_module(rep: RepresentationData) -> FreeModule:
    """Hom_A(E, V) with basis hom(e_j,u_k) at index j * rank(V) + k"""
    names = tuple(f"hom({e},{u})" for e in rep.algebra.module.basis_names for u in rep.target.basis_names)
    return FreeModule(rep.ring, names)


def induced_rep_on_C1(rep: RepresentationData) -> RepresentationData:
    """
    Lie-Rinehart representation of the sub-adjacent algebra on C^1

      varrho(X)(psi)(Y) = rho(X) psi(Y) + mu(Y) psi(X) - psi(X.Y)

    Args:
        rep: Pre-Lie representation passing check_representation

    Returns:
        Representation on Hom_A(E, V) with origin set to rep
    """
    if not rep.is_prelie:
        raise MalformedTableError("induced representation needs pre-Lie data")
    _require(check_representation(rep), "representation")
    alg = rep.algebra
    n, r = alg.rank, rep.target.rank
    c1 = c1_module(rep)
    ring = rep.ring
    rho = []
    for i in range(n):
        columns = []
        for j in range(n):
            for k in range(r):
                coeffs = [ring.zero()] * (n * r)
                for l in range(n):
                    value = rep.target.zero()
                    if l == j:
                        value = value + rep.rho[i].linear_part.column(k)
                    if i == j:
                        value = value + rep.mu[l].column(k)
                    c = alg.product_of(i, l)[j]
                    if c:
                        value = value - c * rep.target.basis(k)
                    for m, coeff in enumerate(value.coeffs):
                        coeffs[l * r + m] = coeff
                columns.append(Element(c1, coeffs))
        rho.append(DerivationPair(LinearMap.from_columns(c1, c1, columns), alg.anchor[i]))
    lie = sub_adjacent(alg, check=False)
    return RepresentationData(lie, c1, rho, origin=rep)


def _c1_to_map(rep: RepresentationData, psi: Element, j: int) -> Element:
    r = rep.target.rank
    return Element(rep.target, psi.coeffs[j * r:(j + 1) * r])


def complex_iso_H(psi: Cochain) -> Cochain:
    """H(psi)(X_1, ..., X_{n+1}) = psi(X_1, ..., X_n)(X_{n+1})"""
    c1_rep = psi.rep
    rep = c1_rep.origin
    if psi.kind != LIE or rep is None or c1_rep.target != c1_module(rep):
        raise ModuleMismatchError("H expects a lie cochain valued in the induced module on C^1")
    n = rep.algebra.rank
    values = {}
    for key, value in psi.values.items():
        for j in range(n):
            values[key + (j,)] = _c1_to_map(rep, value, j)
    return Cochain(PRELIE, psi.degree + 1, rep, values)


def complex_iso_H_inverse(phi: Cochain, c1_rep: Optional[RepresentationData] = None) -> Cochain:
    if phi.kind != PRELIE:
        raise CochainDegreeError("inverse of H expects a prelie cochain")
    rep = phi.rep
    c1_rep = c1_rep or induced_rep_on_C1(rep)
    if c1_rep.origin != rep:
        raise ModuleMismatchError("induced representation built from another representation")
    n, r = rep.algebra.rank, rep.target.rank
    grouped: Dict[Tuple[int, ...], List] = {}
    for key, value in phi.values.items():
        coeffs = grouped.setdefault(key[:-1], [rep.ring.zero()] * (n * r))
        for k, c in enumerate(value.coeffs):
            coeffs[key[-1] * r + k] = c
    values = {key: Element(c1_rep.target, coeffs) for key, coeffs in grouped.items()}
    return Cochain(LIE, phi.degree - 1, c1_rep, values)


# ----- cocycles and field-case linear algebra -----

def cocycle_check(c: Cochain) -> Report:
    d = coboundary(c)
    builder = ReportBuilder(f"{c.kind} cocycle of degree {c.degree}")
    builder.check("cocycle", sorted(d.values.items()))
    return builder.build()


def _require_field(rep: RepresentationData) -> None:
    if not rep.ring.is_field:
        raise NotFieldCaseError("operation needs the rationals as base ring")


def cochain_vector(c: Cochain) -> List[Fraction]:
    """Coordinates over Q, canonical key order then target basis order"""
    _require_field(c.rep)
    out = []
    for key in c.keys():
        value = c.values.get(key)
        for k in range(c.rep.target.rank):
            out.append(value[k].constant_value() if value is not None else Fraction(0))
    return out


def cochain_from_vector(kind: str, degree: int, rep: RepresentationData, vec: Sequence[Fraction]) -> Cochain:
    r = rep.target.rank
    values = {}
    for pos, key in enumerate(canonical_keys(kind, degree, rep.algebra.rank)):
        values[key] = Element(rep.target, list(vec[pos * r:(pos + 1) * r]))
    return Cochain(kind, degree, rep, values)


def cochain_dimension(kind: str, degree: int, rep: RepresentationData) -> int:
    return sum(1 for _ in canonical_keys(kind, degree, rep.algebra.rank)) * rep.target.rank


def coboundary_matrix_field(rep: RepresentationData, kind: str, degree: int) -> Tuple[List[List[Fraction]], int]:
    """
    Matrix of the coboundary from degree to degree + 1 over Q

    Returns:
        Rows (one per coordinate of the next degree) and the number of columns
    """
    _require_field(rep)
    _check_degree(kind, degree)
    ncols = cochain_dimension(kind, degree, rep)
    nrows = cochain_dimension(kind, degree + 1, rep)
    columns = []
    for pos in range(ncols):
        unit = [Fraction(0)] * ncols
        unit[pos] = Fraction(1)
        columns.append(cochain_vector(coboundary(cochain_from_vector(kind, degree, rep, unit))))
    rows = [[columns[c][row] for c in range(ncols)] for row in range(nrows)]
    return rows, ncols


def coboundary_solve_field(c: Cochain) -> Optional[Cochain]:
    """Some b with coboundary(b) = c, or None when c is not exact"""
    _require_field(c.rep)
    lowest = 1 if c.kind == PRELIE else 0
    if c.degree <= lowest:
        raise CochainDegreeError(f"no {c.kind} cochains below degree {c.degree}")
    rows, ncols = coboundary_matrix_field(c.rep, c.kind, c.degree - 1)
    solution = solve(rows, cochain_vector(c), ncols)
    if solution is None:
        return None
    return cochain_from_vector(c.kind, c.degree - 1, c.rep, solution)


def cohomology_dims_field(alg: AlgebraData, rep: RepresentationData, n_max: int,
                          kind: str = PRELIE) -> List[int]:
    """
    dim H^n = nullity(delta_n) - rank(delta_{n-1}) over Q

    Args:
        alg: Algebra over the rationals
        rep: Representation of alg
        n_max: Highest degree
        kind: prelie (degrees 1..n_max) or lie (degrees 0..n_max)

    Returns:
        Dimensions in increasing degree
    """
    if rep.algebra != alg:
        raise ModuleMismatchError("representation belongs to another algebra")
    _require_field(rep)
    start = 1 if kind == PRELIE else 0
    ranks: Dict[int, int] = {start - 1: 0}
    dims = []
    for n in range(start, n_max + 1):
        rows, ncols = coboundary_matrix_field(rep, kind, n)
        ranks[n] = rank(rows, ncols)
        dims.append(ncols - ranks[n] - ranks[n - 1])
    logger.info("%s cohomology dimensions up to degree %d: %s", kind, n_max, dims)
    return dims
