"""
Crossed modules of pre-Lie-Rinehart algebras, their sub-adjacent Lie-Rinehart
crossed modules, crossed extensions and the 3-cocycle they determine.
"""
from __future__ import annotations

import logging
from itertools import combinations
from typing import List, Mapping, Optional, Sequence, Tuple

from algebra.coeffring import DerivationPair, Element, FreeModule, LinearMap
from algebra.cohomology import (
    PRELIE,
    Cochain,
    RepresentationData,
    check_representation,
    prelie_coboundary,
    semidirect_product,
    sub_adjacent_representation,
)
from algebra.errors import KernelImageError, ModuleMismatchError, VerificationError
from algebra.linalg import rank, solve
from algebra.report import Report, ReportBuilder
from algebra.structures import (
    LieRinehartData,
    PreLieRinehartData,
    check_homomorphism,
    normalize_table,
    sub_adjacent,
    verify_lie_rinehart,
    verify_prelie_rinehart,
)

logger = logging.getLogger(__name__)


class CrossedModuleData:
    """(E, V, boundary, (rho, mu)) with an A-bilinear pre-Lie product on V"""

    def __init__(self, base: PreLieRinehartData, top: FreeModule, top_product: Optional[Mapping],
                 boundary: LinearMap, rep: RepresentationData):
        if boundary.domain != top or boundary.codomain != base.module:
            raise ModuleMismatchError("boundary must map the top module into the base")
        if not rep.is_prelie or rep.algebra != base or rep.target != top:
            raise ModuleMismatchError("structure maps must act from the base on the top module")
        self.base = base
        self.top = top
        self.top_product = normalize_table(top_product or {}, top, (top.rank, top.rank))
        self.boundary = boundary
        self.rep = rep

    @property
    def top_algebra(self) -> PreLieRinehartData:
        return PreLieRinehartData(self.top, self.top_product)

    def top_multiply(self, u: Element, v: Element) -> Element:
        return self.top_algebra.multiply(u, v)

    def __eq__(self, other):
        if not isinstance(other, CrossedModuleData):
            return NotImplemented
        return (self.base, self.top, self.top_product, self.boundary, self.rep) == \
            (other.base, other.top, other.top_product, other.boundary, other.rep)


def verify_crossed_module(cm: CrossedModuleData) -> Report:
    """
    Crossed-module conditions on generators

    (1) d(rho(X)u) = X.d(u) and d(mu(X)u) = d(u).X
    (2) rho(d(u))v = u.v and mu(d(v))u = u.v
    (3) theta o d = 0
    plus the representation, the top product, the homomorphism property of d
    and the two Leibniz-type identities that make the total algebra pre-Lie.
    """
    base, rep, d = cm.base, cm.rep, cm.boundary
    n, r = base.rank, cm.top.rank
    eb = [base.basis(i) for i in range(n)]
    ub = [cm.top.basis(k) for k in range(r)]
    top = cm.top_algebra
    mul = top.multiply
    builder = ReportBuilder("crossed module")
    builder.extend("base", verify_prelie_rinehart(base))
    builder.extend("representation", check_representation(rep))
    builder.extend("top", verify_prelie_rinehart(top))
    builder.check("boundary_homomorphism", (
        ((k, l), d(mul(ub[k], ub[l])) - base.multiply(d(ub[k]), d(ub[l])))
        for k in range(r) for l in range(r)
    ))
    builder.check("equivariance_left", (
        ((i, k), d(rep.rho[i](ub[k])) - base.multiply(eb[i], d(ub[k])))
        for i in range(n) for k in range(r)
    ))
    builder.check("equivariance_right", (
        ((i, k), d(rep.mu[i](ub[k])) - base.multiply(d(ub[k]), eb[i]))
        for i in range(n) for k in range(r)
    ))
    builder.check("peiffer_left", (
        ((k, l), rep.act(d(ub[k]), ub[l]) - mul(ub[k], ub[l]))
        for k in range(r) for l in range(r)
    ))
    builder.check("peiffer_right", (
        ((k, l), rep.right_act(d(ub[l]), ub[k]) - mul(ub[k], ub[l]))
        for k in range(r) for l in range(r)
    ))
    builder.check("anchor_boundary", (((k,), base.anchor_of(d(ub[k]))) for k in range(r)))

    def leibniz_left(i, k, l):
        rho, mu = rep.rho[i], rep.mu[i]
        u, v = ub[k], ub[l]
        return rho(mul(u, v)) - mul(rho(u), v) - mul(u, rho(v)) + mul(mu(u), v)

    def leibniz_right(i, k, l):
        mu = rep.mu[i]
        u, v = ub[k], ub[l]
        return mul(u, mu(v)) - mu(mul(u, v)) - mul(v, mu(u)) + mu(mul(v, u))

    builder.check("leibniz_left", (((i, k, l), leibniz_left(i, k, l))
                                   for i in range(n) for k in range(r) for l in range(r)))
    builder.check("leibniz_right", (((i, k, l), leibniz_right(i, k, l))
                                    for i in range(n) for k in range(r) for l in range(r)))
    return builder.build()


def _require(report: Report, what: str) -> None:
    if not report.passed:
        raise VerificationError(f"{what} fails verification", report)


def total_algebra(cm: CrossedModuleData) -> PreLieRinehartData:
    """X.Y + rho(X)v + mu(Y)u + u.v on E + V with theta(X + u) = theta(X)"""
    _require(verify_crossed_module(cm), "crossed module")
    return semidirect_product(cm.rep, top_product=cm.top_product)


def ideal_crossed_module(alg: PreLieRinehartData, ideal_indices: Sequence[int]) -> CrossedModuleData:
    """Inclusion of an ideal spanned by basis elements with zero anchor"""
    idx = list(ideal_indices)
    names = alg.module.basis_names
    top = FreeModule(alg.ring, tuple(names[i] for i in idx))

    def restrict(value: Element) -> Element:
        if any(value[i] for i in range(alg.rank) if i not in idx):
            raise KernelImageError(f"{value} leaves the span of {top.basis_names}")
        return Element(top, [value[i] for i in idx])

    for i in idx:
        if not alg.anchor[i].is_zero():
            raise KernelImageError(f"{names[i]} has nonzero anchor")
    table = {(a, b): restrict(alg.product_of(i, j)) for a, i in enumerate(idx) for b, j in enumerate(idx)}
    boundary = LinearMap.from_columns(top, alg.module, [alg.basis(i) for i in idx])
    rho, mu = [], []
    for i in range(alg.rank):
        rho_cols = [restrict(alg.product_of(i, j)) for j in idx]
        mu_cols = [restrict(alg.product_of(j, i)) for j in idx]
        rho.append(DerivationPair(LinearMap.from_columns(top, top, rho_cols), alg.anchor[i]))
        mu.append(LinearMap.from_columns(top, top, mu_cols))
    rep = RepresentationData(alg, top, rho, mu)
    return CrossedModuleData(alg, top, table, boundary, rep)


def zero_boundary_crossed_module(rep: RepresentationData, top_product: Optional[Mapping] = None) -> CrossedModuleData:
    """(E, V, 0, (rho, mu))"""
    boundary = LinearMap.zero(rep.target, rep.algebra.module)
    return CrossedModuleData(rep.algebra, rep.target, top_product, boundary, rep)


# ----- sub-adjacent Lie-Rinehart crossed modules -----

class LieCrossedModuleData:
    """(E^c, V^c, boundary, rho) with a Lie bracket on V"""

    def __init__(self, base: LieRinehartData, top: FreeModule, top_bracket: Optional[Mapping],
                 boundary: LinearMap, rep: RepresentationData):
        if boundary.domain != top or boundary.codomain != base.module:
            raise ModuleMismatchError("boundary must map the top module into the base")
        if rep.is_prelie or rep.algebra != base or rep.target != top:
            raise ModuleMismatchError("Lie crossed module needs a Lie representation on the top module")
        self.base = base
        self.top = top
        self.top_bracket = normalize_table(top_bracket or {}, top, (top.rank, top.rank))
        self.boundary = boundary
        self.rep = rep

    @property
    def top_algebra(self) -> LieRinehartData:
        return LieRinehartData(self.top, self.top_bracket)

    def __eq__(self, other):
        if not isinstance(other, LieCrossedModuleData):
            return NotImplemented
        return (self.base, self.top, self.top_bracket, self.boundary, self.rep) == \
            (other.base, other.top, other.top_bracket, other.boundary, other.rep)


def verify_lie_crossed_module(lcm: LieCrossedModuleData) -> Report:
    base, rep, d = lcm.base, lcm.rep, lcm.boundary
    n, r = base.rank, lcm.top.rank
    eb = [base.basis(i) for i in range(n)]
    ub = [lcm.top.basis(k) for k in range(r)]
    top = lcm.top_algebra
    br = top.bracket
    builder = ReportBuilder("Lie-Rinehart crossed module")
    builder.extend("representation", check_representation(rep))
    builder.extend("top", verify_lie_rinehart(top))
    builder.check("boundary_homomorphism", (
        ((k, l), d(br(ub[k], ub[l])) - base.bracket(d(ub[k]), d(ub[l]))) for k, l in combinations(range(r), 2)
    ))
    builder.check("equivariance", (
        ((i, k), d(rep.rho[i](ub[k])) - base.bracket(eb[i], d(ub[k]))) for i in range(n) for k in range(r)
    ))
    builder.check("peiffer", (
        ((k, l), rep.act(d(ub[k]), ub[l]) - br(ub[k], ub[l])) for k in range(r) for l in range(r)
    ))
    builder.check("anchor_boundary", (((k,), base.anchor_of(d(ub[k]))) for k in range(r)))
    builder.check("derivation", (
        ((i, k, l), rep.rho[i](br(ub[k], ub[l])) - br(rep.rho[i](ub[k]), ub[l]) - br(ub[k], rep.rho[i](ub[l])))
        for i in range(n) for k, l in combinations(range(r), 2)
    ))
    return builder.build()


def sub_adjacent_crossed(cm: CrossedModuleData) -> Tuple[LieCrossedModuleData, Report]:
    """(E^c, V^c, d, rho - mu) and its Lie-Rinehart crossed-module report"""
    base = sub_adjacent(cm.base, check=False)
    bracket = {}
    for k in range(cm.top.rank):
        for l in range(cm.top.rank):
            if k != l:
                pkl = cm.top_product.get((k, l)) or cm.top.zero()
                plk = cm.top_product.get((l, k)) or cm.top.zero()
                bracket[(k, l)] = pkl - plk
    rep = sub_adjacent_representation(cm.rep, use_mu=True)
    lcm = LieCrossedModuleData(base, cm.top, bracket, cm.boundary, rep)
    return lcm, verify_lie_crossed_module(lcm)


# ----- crossed extensions -----

def _constant_pivot_rows(inclusion: LinearMap) -> Optional[List[int]]:
    """Rows where one column has a nonzero constant entry and the others vanish"""
    pivots = []
    for c in range(inclusion.domain.rank):
        found = None
        for row_index, row in enumerate(inclusion.rows):
            entry = row[c]
            if entry and entry.is_constant() and all(not row[o] for o in range(len(row)) if o != c):
                found = row_index
                break
        if found is None:
            return None
        pivots.append(found)
    return pivots


class CrossedExtensionData:
    """
    Exact sequence 0 -> K -> V -> E -> F -> 0 given by a crossed module, the
    projection p: E -> F with section s, the image N of the boundary spanned
    by the basis positions image_indices, a section sigma: N -> V of the
    boundary and an inclusion of K = ker(boundary).
    """

    def __init__(self, cm: CrossedModuleData, quotient: PreLieRinehartData, projection: LinearMap,
                 section: LinearMap, image_indices: Sequence[int], sigma: LinearMap,
                 kernel_basis: FreeModule, kernel_inclusion: LinearMap):
        base = cm.base.module
        if projection.domain != base or projection.codomain != quotient.module:
            raise ModuleMismatchError("projection must map the base onto the quotient")
        if section.domain != quotient.module or section.codomain != base:
            raise ModuleMismatchError("section must map the quotient into the base")
        image = FreeModule(base.ring, tuple(base.basis_names[i] for i in image_indices))
        if sigma.domain != image or sigma.codomain != cm.top:
            raise ModuleMismatchError("sigma must map the boundary image into the top module")
        if kernel_inclusion.domain != kernel_basis or kernel_inclusion.codomain != cm.top:
            raise ModuleMismatchError("kernel inclusion must map into the top module")
        self.cm = cm
        self.quotient = quotient
        self.projection = projection
        self.section = section
        self.image_indices = tuple(image_indices)
        self.image_module = image
        self.sigma = sigma
        self.kernel_basis = kernel_basis
        self.kernel_inclusion = kernel_inclusion

    def with_section(self, section: LinearMap) -> "CrossedExtensionData":
        return CrossedExtensionData(self.cm, self.quotient, self.projection, section, self.image_indices,
                                    self.sigma, self.kernel_basis, self.kernel_inclusion)

    def image_coords(self, value: Element) -> Element:
        """Coordinates of an element of the boundary image"""
        if any(value[i] for i in range(value.module.rank) if i not in self.image_indices):
            raise KernelImageError(f"{value} lies outside the image of the boundary")
        return Element(self.image_module, [value[i] for i in self.image_indices])

    def kernel_coords(self, value: Element) -> Element:
        """Coordinates in K of an element of ker(boundary)"""
        inclusion = self.kernel_inclusion
        ring = self.cm.top.ring
        if ring.is_field:
            rows = [[c.constant_value() for c in row] for row in inclusion.rows]
            coords = solve(rows, [c.constant_value() for c in value.coeffs], inclusion.domain.rank)
            if coords is None:
                raise KernelImageError(f"{value} lies outside ker(boundary)")
            return Element(self.kernel_basis, coords)
        pivots = _constant_pivot_rows(inclusion)
        if pivots is None:
            raise KernelImageError("kernel inclusion has no coordinate rows over a polynomial ring")
        coeffs = [value[row] * (1 / inclusion.rows[row][c].constant_value()) for c, row in enumerate(pivots)]
        coords = Element(self.kernel_basis, coeffs)
        if inclusion(coords) != value:
            raise KernelImageError(f"{value} lies outside ker(boundary)")
        return coords

    def __eq__(self, other):
        if not isinstance(other, CrossedExtensionData):
            return NotImplemented
        return (self.cm, self.quotient, self.projection, self.section, self.image_indices,
                self.sigma, self.kernel_basis, self.kernel_inclusion) == \
            (other.cm, other.quotient, other.projection, other.section, other.image_indices,
             other.sigma, other.kernel_basis, other.kernel_inclusion)


def check_crossed_extension(xd: CrossedExtensionData) -> Report:
    cm = xd.cm
    d = cm.boundary
    r = cm.top.rank
    builder = ReportBuilder("crossed extension")
    builder.extend("crossed", verify_crossed_module(cm))
    builder.extend("quotient", verify_prelie_rinehart(xd.quotient))
    builder.extend("projection", check_homomorphism(xd.projection, cm.base, xd.quotient))
    builder.check("section", (
        ((a,), xd.projection(col) - xd.quotient.basis(a)) for a, col in enumerate(xd.section.columns())
    ))
    builder.check("image_in_kernel", (
        ((i,), xd.projection(cm.base.basis(i))) for i in xd.image_indices
    ))
    builder.check("boundary_in_image", (
        ((k,), Element(d.codomain, [c if i not in xd.image_indices else c.ring.zero()
                                    for i, c in enumerate(d.column(k).coeffs)]))
        for k in range(r)
    ))
    builder.check("boundary_section", (
        ((a,), d(xd.sigma.column(a)) - cm.base.basis(i)) for a, i in enumerate(xd.image_indices)
    ))
    builder.check("kernel_boundary", (
        ((c,), d(col)) for c, col in enumerate(xd.kernel_inclusion.columns())
    ))
    if cm.base.ring.is_field:
        def consts(m: LinearMap):
            return [[c.constant_value() for c in row] for row in m.rows]

        rank_d = rank(consts(d), r)
        builder.require("image_spans", rank_d == len(xd.image_indices),
                        detail=f"rank {rank_d} vs {len(xd.image_indices)} image generators")
        kernel_rank = rank(consts(xd.kernel_inclusion), xd.kernel_basis.rank)
        builder.require("kernel_spans", kernel_rank == xd.kernel_basis.rank == r - rank_d,
                        detail=f"kernel rank {kernel_rank}, expected {r - rank_d}")
        ker_p = cm.base.rank - xd.quotient.rank
        builder.require("exact_at_base", ker_p == len(xd.image_indices),
                        detail=f"{ker_p} vs {len(xd.image_indices)}")
    return builder.build()


def pulled_back_representation(xd: CrossedExtensionData) -> RepresentationData:
    """(V; rho_E o s, mu_E o s) over the quotient"""
    rep = xd.cm.rep
    images = xd.section.columns()
    rho = [rep.rho_of(s) for s in images]
    mu = [rep.mu_of(s) for s in images]
    return RepresentationData(xd.quotient, xd.cm.top, rho, mu)


def induced_kernel_representation(xd: CrossedExtensionData) -> RepresentationData:
    """rho_F(X)k = rho_E(s(X))k and mu_F(X)k = mu_E(s(X))k on K = ker(boundary)"""
    pulled = pulled_back_representation(xd)
    kmod = xd.kernel_basis
    kernel_elems = xd.kernel_inclusion.columns()
    rho, mu = [], []
    for a in range(xd.quotient.rank):
        rho_cols = [xd.kernel_coords(pulled.rho[a](k)) for k in kernel_elems]
        mu_cols = [xd.kernel_coords(pulled.mu[a](k)) for k in kernel_elems]
        rho.append(DerivationPair(LinearMap.from_columns(kmod, kmod, rho_cols), xd.quotient.anchor[a]))
        mu.append(LinearMap.from_columns(kmod, kmod, mu_cols))
    return RepresentationData(xd.quotient, kmod, rho, mu)


def _g_cochain(xd: CrossedExtensionData, rep: RepresentationData) -> Cochain:
    """g(X,Y) = sigma(s(X).s(Y) - s(X.Y)) valued in V"""
    base, quotient, s = xd.cm.base, xd.quotient, xd.section
    images = s.columns()
    values = {}
    for a in range(quotient.rank):
        for b in range(quotient.rank):
            defect = base.multiply(images[a], images[b]) - s(quotient.product_of(a, b))
            values[(a, b)] = xd.sigma(xd.image_coords(defect))
    return Cochain(PRELIE, 2, rep, values)


def three_cocycle_from_extension(xd: CrossedExtensionData) -> Cochain:
    """
    The 3-cocycle f = delta(g) of a crossed extension, in kernel coordinates

    Args:
        xd: Crossed extension

    Returns:
        prelie 3-cochain of the quotient valued in K with the induced representation
    """
    kernel_rep = induced_kernel_representation(xd)
    _require(check_representation(kernel_rep), "induced kernel representation")
    g = _g_cochain(xd, pulled_back_representation(xd))
    f = prelie_coboundary(g)
    values = {key: xd.kernel_coords(value) for key, value in f.values.items()}
    logger.debug("3-cocycle of crossed extension has %d nonzero values", len(values))
    return Cochain(PRELIE, 3, kernel_rep, values)


def section_change_cochain(xd: CrossedExtensionData, s_tilde: LinearMap, phi: LinearMap) -> Cochain:
    """
    g~ - g - w in kernel coordinates, for a new section s~ = s + d o phi

      w(X,Y) = rho(s(X))phi(Y) + mu(s(Y))phi(X) - phi(X.Y) + phi(X).phi(Y)

    Its coboundary is the change f~ - f of the 3-cocycle.
    """
    d = xd.cm.boundary
    if phi.domain != xd.quotient.module or phi.codomain != xd.cm.top:
        raise ModuleMismatchError("phi must map the quotient into the top module")
    if s_tilde - xd.section != d.compose(phi):
        raise KernelImageError("new section does not differ from the old one by d o phi")
    other = xd.with_section(s_tilde)
    pulled = pulled_back_representation(xd)
    g = _g_cochain(xd, pulled)
    g_tilde = _g_cochain(other, pulled_back_representation(other))
    top = xd.cm.top_algebra
    quotient = xd.quotient
    qb = [quotient.basis(a) for a in range(quotient.rank)]
    values = {}
    for a in range(quotient.rank):
        for b in range(quotient.rank):
            w = (pulled.rho[a](phi(qb[b])) + pulled.mu[b](phi(qb[a]))
                 - phi(quotient.product_of(a, b)) + top.multiply(phi(qb[a]), phi(qb[b])))
            values[(a, b)] = xd.kernel_coords(g_tilde.value((a, b)) - g.value((a, b)) - w)
    return Cochain(PRELIE, 2, induced_kernel_representation(xd), values)
