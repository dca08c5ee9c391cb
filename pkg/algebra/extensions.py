"""
Extensions of pre-Lie-Rinehart algebras in split coordinates.

Every extension 0 -> E' -> E -> E'' -> 0 of free modules splits A-linearly,
so an extension is kept as the structure on E'' + E' together with its
structure data (rho, mu, omega) relative to a split sigma.
"""
from __future__ import annotations

import logging
from itertools import combinations
from typing import List, Optional, Sequence

from algebra.coeffring import DerivationPair, Element, FreeModule, LinearMap
from algebra.cohomology import (
    PRELIE,
    Cochain,
    RepresentationData,
    coboundary_solve_field,
    prelie_coboundary,
    semidirect_product,
)
from algebra.errors import (
    KernelImageError,
    ModuleMismatchError,
    NotFieldCaseError,
    SectionError,
    UnsupportedError,
)
from algebra.report import Report, ReportBuilder
from algebra.structures import (
    PreLieRinehartData,
    check_homomorphism,
    embed_element,
    verify_prelie_rinehart,
)

logger = logging.getLogger(__name__)


class ExtensionData:
    """Quotient E'', kernel E' (zero anchor), structure maps (rho, mu) and the cochain omega"""

    def __init__(self, quotient: PreLieRinehartData, kernel: PreLieRinehartData,
                 rep: RepresentationData, omega: Optional[Cochain] = None):
        if any(not vf.is_zero() for vf in kernel.anchor):
            raise ModuleMismatchError("the kernel of an extension must have zero anchor")
        if not rep.is_prelie or rep.algebra != quotient or rep.target != kernel.module:
            raise ModuleMismatchError("structure maps must act from the quotient on the kernel")
        omega = omega if omega is not None else Cochain.zero(PRELIE, 2, rep)
        if omega.kind != PRELIE or omega.degree != 2 or omega.rep != rep:
            raise ModuleMismatchError("omega must be a prelie 2-cochain for the same structure maps")
        self.quotient = quotient
        self.kernel = kernel
        self.rep = rep
        self.omega = omega

    @property
    def kernel_is_abelian(self) -> bool:
        return not self.kernel.product

    def __eq__(self, other):
        if not isinstance(other, ExtensionData):
            return NotImplemented
        return (self.quotient, self.kernel, self.rep, self.omega) == \
            (other.quotient, other.kernel, other.rep, other.omega)


class SplitExtension:
    """Total algebra on quotient + kernel with an A-linear split sigma of the projection"""

    def __init__(self, total: PreLieRinehartData, quotient_module: FreeModule,
                 kernel_module: FreeModule, split: LinearMap):
        if total.rank != quotient_module.rank + kernel_module.rank:
            raise ModuleMismatchError("total rank is not the sum of quotient and kernel ranks")
        if split.domain != quotient_module or split.codomain != total.module:
            raise ModuleMismatchError("split must map the quotient into the total module")
        self.total = total
        self.quotient_module = quotient_module
        self.kernel_module = kernel_module
        self.split = split

    def projection(self) -> LinearMap:
        n = self.quotient_module.rank
        ring = self.total.ring
        rows = [[ring.one() if c == r else ring.zero() for c in range(self.total.rank)] for r in range(n)]
        return LinearMap(self.total.module, self.quotient_module, rows)

    def inclusion(self) -> LinearMap:
        n = self.quotient_module.rank
        cols = [self.total.basis(n + k) for k in range(self.kernel_module.rank)]
        return LinearMap.from_columns(self.kernel_module, self.total.module, cols)

    def check_split(self) -> bool:
        return self.projection().compose(self.split) == LinearMap.identity(self.quotient_module)


def build_extension(x: ExtensionData) -> SplitExtension:
    """X.Y + omega(X,Y) + rho(X)v + mu(Y)u + u.v with theta(X + u) = theta(X)"""
    total = semidirect_product(x.rep, top_product=x.kernel.product, omega=x.omega)
    n = x.quotient.rank
    split = LinearMap.from_columns(x.quotient.module, total.module, [total.basis(i) for i in range(n)])
    return SplitExtension(total, x.quotient.module, x.kernel.module, split)


def check_extension_conditions(x: ExtensionData) -> Report:
    """
    Conditions for the extended product to be pre-Lie-Rinehart, on basis tuples

    X, Y run over the quotient basis, u, v over the kernel basis:
      ext1: [rho(X), rho(Y)]u - rho([X,Y])u = (omega(X,Y) - omega(Y,X)).u
      ext2: rho(X)mu(Y)u - mu(Y)rho(X)u = mu(X.Y)u - mu(Y)mu(X)u + u.omega(X,Y)
      ext3: rho(X)(u.v) - (rho(X)u).v = u.rho(X)v - (mu(X)u).v
      ext4: u.mu(X)v - mu(X)(u.v) = v.mu(X)u - mu(X)(v.u)
      ext5: delta(omega) = 0
    """
    q, k, rep, omega = x.quotient, x.kernel, x.rep, x.omega
    n, r = q.rank, k.rank
    qb = [q.basis(i) for i in range(n)]
    kb = [k.basis(j) for j in range(r)]
    mul = k.multiply
    builder = ReportBuilder("extension conditions")
    builder.extend("quotient_prelie", verify_prelie_rinehart(q))
    builder.extend("kernel_prelie", verify_prelie_rinehart(k))

    def ext1(i, j, a):
        u = kb[a]
        lhs = rep.rho[i](rep.rho[j](u)) - rep.rho[j](rep.rho[i](u)) - rep.act(q.commutator(qb[i], qb[j]), u)
        return lhs - mul(omega.value((i, j)) - omega.value((j, i)), u)

    def ext2(i, j, a):
        u = kb[a]
        rho_i, mu_i, mu_j = rep.rho[i], rep.mu[i], rep.mu[j]
        return (rho_i(mu_j(u)) - mu_j(rho_i(u)) - rep.right_act(q.product_of(i, j), u)
                + mu_j(mu_i(u)) - mul(u, omega.value((i, j))))

    def ext3(i, a, b):
        rho, mu = rep.rho[i], rep.mu[i]
        u, v = kb[a], kb[b]
        return rho(mul(u, v)) - mul(rho(u), v) - mul(u, rho(v)) + mul(mu(u), v)

    def ext4(i, a, b):
        mu = rep.mu[i]
        u, v = kb[a], kb[b]
        return mul(u, mu(v)) - mu(mul(u, v)) - mul(v, mu(u)) + mu(mul(v, u))

    builder.check("ext1", (((i, j, a), ext1(i, j, a)) for i, j in combinations(range(n), 2) for a in range(r)))
    builder.check("ext2", (((i, j, a), ext2(i, j, a)) for i in range(n) for j in range(n) for a in range(r)))
    builder.check("ext3", (((i, a, b), ext3(i, a, b)) for i in range(n) for a in range(r) for b in range(r)))
    builder.check("ext4", (((i, a, b), ext4(i, a, b)) for i in range(n) for a in range(r) for b in range(r)))
    builder.check("ext5", sorted(prelie_coboundary(omega).values.items()))
    return builder.build()


def _complement(indices: Sequence[int], total: int) -> List[int]:
    chosen = set(indices)
    return [i for i in range(total) if i not in chosen]


def extract_from_split(total: PreLieRinehartData, kernel_indices: Sequence[int],
                       split: LinearMap) -> ExtensionData:
    """
    Recover (E'', E', rho, mu, omega) from a total algebra and a split

      rho(X)u = sigma(X).u, mu(X)u = u.sigma(X), omega(X,Y) = sigma(X).sigma(Y) - sigma(X.Y)

    Args:
        total: Algebra containing the kernel as an ideal with zero anchor
        kernel_indices: Basis positions spanning the kernel
        split: Map from the quotient module (remaining basis names) into total

    Returns:
        Extension data in kernel coordinates
    """
    kernel_idx = list(kernel_indices)
    quot_idx = _complement(kernel_idx, total.rank)
    ring = total.ring
    names = total.module.basis_names
    qmod = FreeModule(ring, tuple(names[i] for i in quot_idx))
    kmod = FreeModule(ring, tuple(names[i] for i in kernel_idx))
    if split.domain != qmod or split.codomain != total.module:
        raise SectionError("split does not map the quotient into the total algebra")

    def project(value: Element) -> Element:
        return Element(qmod, [value[i] for i in quot_idx])

    def to_kernel(value: Element) -> Element:
        if any(value[i] for i in quot_idx):
            raise KernelImageError(f"{value} does not lie in the kernel")
        return Element(kmod, [value[i] for i in kernel_idx])

    for a, col in enumerate(split.columns()):
        if project(col) != qmod.basis(a):
            raise SectionError(f"projection of sigma({qmod.basis_names[a]}) is not itself")
    for k in kernel_idx:
        if not total.anchor[k].is_zero():
            raise KernelImageError("kernel generators must have zero anchor")

    kb = [total.basis(k) for k in kernel_idx]
    kernel_table = {(a, b): to_kernel(total.multiply(kb[a], kb[b]))
                    for a in range(len(kb)) for b in range(len(kb))}
    kernel = PreLieRinehartData(kmod, kernel_table)
    quotient_table = {(a, b): project(total.product_of(i, j))
                      for a, i in enumerate(quot_idx) for b, j in enumerate(quot_idx)}
    quotient = PreLieRinehartData(qmod, quotient_table, [total.anchor[i] for i in quot_idx])

    sections = split.columns()
    rho, mu = [], []
    for a, s in enumerate(sections):
        rho_cols = [to_kernel(total.multiply(s, u)) for u in kb]
        mu_cols = [to_kernel(total.multiply(u, s)) for u in kb]
        rho.append(DerivationPair(LinearMap.from_columns(kmod, kmod, rho_cols), quotient.anchor[a]))
        mu.append(LinearMap.from_columns(kmod, kmod, mu_cols))
    rep = RepresentationData(quotient, kmod, rho, mu)
    omega_values = {}
    for a in range(qmod.rank):
        for b in range(qmod.rank):
            lifted = split(quotient.product_of(a, b))
            omega_values[(a, b)] = to_kernel(total.multiply(sections[a], sections[b]) - lifted)
    omega = Cochain(PRELIE, 2, rep, omega_values)
    logger.debug("extracted extension data over quotient %s", qmod.basis_names)
    return ExtensionData(quotient, kernel, rep, omega)


def perturb_split(split: SplitExtension, phi: LinearMap) -> SplitExtension:
    """sigma' = sigma + i o phi for an A-linear phi from the quotient into the kernel"""
    if phi.domain != split.quotient_module or phi.codomain != split.kernel_module:
        raise ModuleMismatchError("perturbation must map the quotient into the kernel")
    moved = split.split + split.inclusion().compose(phi)
    return SplitExtension(split.total, split.quotient_module, split.kernel_module, moved)


def _same_data(x1: ExtensionData, x2: ExtensionData) -> None:
    if (x1.quotient, x1.kernel, x1.rep) != (x2.quotient, x2.kernel, x2.rep):
        raise ModuleMismatchError("extensions differ in quotient, kernel or structure maps")


def equivalence_map(x1: ExtensionData, x2: ExtensionData, phi: Cochain) -> LinearMap:
    """tau: E_{x2} -> E_{x1}, tau(X + u) = X + u + phi(X)"""
    _same_data(x1, x2)
    if phi.kind != PRELIE or phi.degree != 1:
        raise ModuleMismatchError("phi must be a prelie 1-cochain")
    total = build_extension(x1).total
    n = x1.quotient.rank
    cols = []
    for a in range(n):
        cols.append(total.basis(a) + embed_element(phi.value((a,)), total.module, n))
    cols.extend(total.basis(n + k) for k in range(x1.kernel.rank))
    return LinearMap.from_columns(total.module, total.module, cols)


def verify_equivalence(x1: ExtensionData, x2: ExtensionData, phi: Cochain) -> Report:
    """Homomorphism and diagram checks of tau built from a supplied phi"""
    tau = equivalence_map(x1, x2, phi)
    e1, e2 = build_extension(x1), build_extension(x2)
    n = x1.quotient.rank
    builder = ReportBuilder("extension equivalence")
    builder.extend("homomorphism", check_homomorphism(tau, e2.total, e1.total))
    inclusion = e1.inclusion()
    builder.check("kernel_diagram", (
        ((k,), tau(inclusion.column(k)) - inclusion.column(k)) for k in range(x1.kernel.rank)
    ))
    projection = e1.projection()
    builder.check("quotient_diagram", (
        ((a,), projection(tau.column(a)) - x1.quotient.basis(a)) for a in range(n)
    ))
    return builder.build()


def equivalence_decide_field(x1: ExtensionData, x2: ExtensionData) -> Optional[LinearMap]:
    """
    Decide equivalence of abelian extensions over Q

    Returns:
        tau: E_{x2} -> E_{x1} with tau(X + u) = X + u + phi(X) where
        delta(phi) = omega_2 - omega_1, or None when the difference is not exact
    """
    _same_data(x1, x2)
    if not x1.quotient.ring.is_field:
        raise NotFieldCaseError("equivalence is decided over the rationals only; use verify_equivalence")
    if not x1.kernel_is_abelian:
        raise UnsupportedError("equivalence is decided for abelian kernels only")
    phi = coboundary_solve_field(x2.omega - x1.omega)
    if phi is None:
        logger.info("omega difference is not a coboundary")
        return None
    return equivalence_map(x1, x2, phi)
