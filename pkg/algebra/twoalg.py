"""
Pre-Lie-Rinehart and Lie-Rinehart 2-algebras on two-term complexes
P1 --m1--> P0, their sub-adjacent functor, and the correspondences
strict <-> crossed module and skeletal <-> (algebra, representation, 3-cocycle).

Tables are stored on basis elements of P0 = span(e_i) and P1 = span(f_k):
  m2_00[(i, j)] = m2(e_i, e_j)      in P0
  m2_01[(i, k)] = m2(e_i, f_k)      in P1  (rho(e_i) f_k)
  m2_10[(k, i)] = m2(f_k, e_i)      in P1  (mu(e_i) f_k)
  m3[(i, j, k)] = m3(e_i, e_j, e_k) in P1  for i < j
m2 on P0 x P0 and P0 x P1 obeys the anchor rule in its right slot; all other
maps are A-linear, so basis values determine everything.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Mapping, Optional, Sequence, Tuple

from algebra.coeffring import DerivationPair, Element, FreeModule, LinearMap, Ring, VectorField
from algebra.cohomology import (
    PRELIE,
    Cochain,
    RepresentationData,
    check_representation,
)
from algebra.crossed import (
    CrossedModuleData,
    LieCrossedModuleData,
    verify_crossed_module,
    verify_lie_crossed_module,
)
from algebra.errors import (
    MalformedTableError,
    ModuleMismatchError,
    NotSkeletalError,
    NotStrictError,
    VerificationError,
)
from algebra.linalg import sort_with_sign
from algebra.report import Report, ReportBuilder
from algebra.structures import (
    LieRinehartData,
    PreLieRinehartData,
    _normalize_anchor,
    normalize_table,
    verify_prelie_rinehart,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TwoTermComplex:
    p0: FreeModule
    p1: FreeModule
    d: LinearMap

    def __post_init__(self):
        if self.d.domain != self.p1 or self.d.codomain != self.p0:
            raise ModuleMismatchError("differential must map P1 into P0")


def _check_modules(p0: FreeModule, p1: FreeModule, d: LinearMap) -> None:
    if p0.ring != p1.ring:
        raise ModuleMismatchError("P0 and P1 over different rings")
    TwoTermComplex(p0, p1, d)


def _require(report: Report, what: str) -> None:
    if not report.passed:
        raise VerificationError(f"{what} fails verification", report)


class PreLie2Data:
    """Pre-Lie-Rinehart 2-algebra (P0, P1, m1, m2, m3, theta)"""

    def __init__(self, p0: FreeModule, p1: FreeModule, m1: LinearMap,
                 m2_00: Optional[Mapping] = None, m2_01: Optional[Mapping] = None,
                 m2_10: Optional[Mapping] = None, m3: Optional[Mapping] = None,
                 anchor: Sequence[VectorField] = ()):
        _check_modules(p0, p1, m1)
        n, r = p0.rank, p1.rank
        self.p0 = p0
        self.p1 = p1
        self.m1 = m1
        self.m2_00 = normalize_table(m2_00 or {}, p0, (n, n))
        self.m2_01 = normalize_table(m2_01 or {}, p1, (n, r))
        self.m2_10 = normalize_table(m2_10 or {}, p1, (r, n))
        self.m3 = normalize_table(m3 or {}, p1, (n, n, n))
        for i, j, _ in self.m3:
            if i >= j:
                raise MalformedTableError(f"m3 keys need i < j in the wedge slots, got {(i, j)}")
        self.anchor = _normalize_anchor(anchor, p0)

    @property
    def ring(self) -> Ring:
        return self.p0.ring

    @property
    def complex(self) -> TwoTermComplex:
        return TwoTermComplex(self.p0, self.p1, self.m1)

    @property
    def is_strict(self) -> bool:
        return not self.m3

    @property
    def is_skeletal(self) -> bool:
        return self.m1.is_zero()

    @property
    def p0_algebra(self) -> PreLieRinehartData:
        return PreLieRinehartData(self.p0, self.m2_00, self.anchor)

    def representation(self) -> RepresentationData:
        """rho(X) = m2(X, -) and mu(X) = m2(-, X) on P1"""
        n, r = self.p0.rank, self.p1.rank
        rho, mu = [], []
        for i in range(n):
            rho_cols = [self.m2_01.get((i, k)) or self.p1.zero() for k in range(r)]
            mu_cols = [self.m2_10.get((k, i)) or self.p1.zero() for k in range(r)]
            rho.append(DerivationPair(LinearMap.from_columns(self.p1, self.p1, rho_cols), self.anchor[i]))
            mu.append(LinearMap.from_columns(self.p1, self.p1, mu_cols))
        return RepresentationData(self.p0_algebra, self.p1, rho, mu)

    def m2_00_apply(self, x: Element, y: Element) -> Element:
        return self.p0_algebra.multiply(x, y)

    def m2_01_apply(self, x: Element, m: Element) -> Element:
        acc = self.p1.zero()
        for i in x.support():
            for k in m.support():
                value = self.m2_01.get((i, k))
                if value is not None:
                    acc = acc + (x[i] * m[k]) * value
                da = self.anchor[i](m[k])
                if da:
                    acc = acc + (x[i] * da) * self.p1.basis(k)
        return acc

    def m2_10_apply(self, m: Element, x: Element) -> Element:
        acc = self.p1.zero()
        for k in m.support():
            for i in x.support():
                value = self.m2_10.get((k, i))
                if value is not None:
                    acc = acc + (m[k] * x[i]) * value
        return acc

    def m3_value(self, i: int, j: int, k: int) -> Element:
        if i == j:
            return self.p1.zero()
        (a, b), sign = sort_with_sign((i, j))
        value = self.m3.get((a, b, k))
        if value is None:
            return self.p1.zero()
        return value if sign > 0 else -value

    def m3_apply(self, x: Element, y: Element, z: Element) -> Element:
        acc = self.p1.zero()
        for i in x.support():
            for j in y.support():
                for k in z.support():
                    value = self.m3_value(i, j, k)
                    if not value.is_zero():
                        acc = acc + (x[i] * y[j] * z[k]) * value
        return acc

    def m3_cochain(self, rep: Optional[RepresentationData] = None) -> Cochain:
        return Cochain(PRELIE, 3, rep or self.representation(), self.m3)

    def __eq__(self, other):
        if not isinstance(other, PreLie2Data):
            return NotImplemented
        return (self.p0, self.p1, self.m1, self.m2_00, self.m2_01, self.m2_10, self.m3, self.anchor) == \
            (other.p0, other.p1, other.m1, other.m2_00, other.m2_01, other.m2_10, other.m3, other.anchor)


def verify_prelie2(x: PreLie2Data) -> Report:
    """
    Checks a, b, c (m1 against m2), e1-e3 (associator symmetry up to m3), f
    (m3 closed) and iv, v (anchor) on basis tuples. Items i-iii hold by the
    way tables are extended and are recorded as notes.
    """
    n, r = x.p0.rank, x.p1.rank
    e = [x.p0.basis(i) for i in range(n)]
    f = [x.p1.basis(k) for k in range(r)]
    m1 = x.m1
    m00, m01, m10, m3 = x.m2_00_apply, x.m2_01_apply, x.m2_10_apply, x.m3_apply
    builder = ReportBuilder("pre-Lie-Rinehart 2-algebra")

    builder.check("a", (((i, k), m1(m01(e[i], f[k])) - m00(e[i], m1(f[k])))
                        for i in range(n) for k in range(r)))
    builder.check("b", (((k, i), m1(m10(f[k], e[i])) - m00(m1(f[k]), e[i]))
                        for k in range(r) for i in range(n)))
    builder.check("c", (((k, l), m01(m1(f[k]), f[l]) - m10(f[k], m1(f[l])))
                        for k in range(r) for l in range(r)))

    def e1(i, j, k):
        a, b, c = e[i], e[j], e[k]
        return m1(m3(a, b, c)) - (m00(a, m00(b, c)) - m00(m00(a, b), c) - m00(b, m00(a, c)) + m00(m00(b, a), c))

    def e2(i, j, k):
        a, b, m = e[i], e[j], f[k]
        return m3(a, b, m1(m)) - (m01(a, m01(b, m)) - m01(m00(a, b), m) - m01(b, m01(a, m)) + m01(m00(b, a), m))

    def e3(k, i, j):
        m, a, b = f[k], e[i], e[j]
        return m3(m1(m), a, b) - (m10(m, m00(a, b)) - m10(m10(m, a), b) - m01(a, m10(m, b)) + m10(m01(a, m), b))

    builder.check("e1", (((i, j, k), e1(i, j, k)) for i, j in combinations(range(n), 2) for k in range(n)))
    builder.check("e2", (((i, j, k), e2(i, j, k)) for i, j in combinations(range(n), 2) for k in range(r)))
    builder.check("e3", (((k, i, j), e3(k, i, j)) for k in range(r) for i in range(n) for j in range(n)))

    def cond_f(iw, ix, iy, iz):
        w, a, b, z = e[iw], e[ix], e[iy], e[iz]
        return (m01(w, m3(a, b, z)) - m01(a, m3(w, b, z)) + m01(b, m3(w, a, z))
                + m10(m3(a, b, w), z) - m10(m3(w, b, a), z) + m10(m3(w, a, b), z)
                - m3(a, b, m00(w, z)) + m3(w, b, m00(a, z)) - m3(w, a, m00(b, z))
                - m3(m00(w, a) - m00(a, w), b, z) + m3(m00(w, b) - m00(b, w), a, z)
                - m3(m00(a, b) - m00(b, a), w, z))

    builder.check("f", (((w, a, b, z), cond_f(w, a, b, z))
                        for w, a, b in combinations(range(n), 3) for z in range(n)))
    builder.note("i", "anchor rule of m2 in its right slot holds by table extension")
    builder.note("ii", "m2 with a P1 argument is A-bilinear by table extension")
    builder.note("iii", "m1 and m3 are A-linear by table extension")
    theta = x.p0_algebra.anchor_of
    builder.check("iv", (((i, j), theta(m00(e[i], e[j]) - m00(e[j], e[i])) - x.anchor[i].commutator(x.anchor[j]))
                         for i, j in combinations(range(n), 2)))
    builder.check("v", (((k,), theta(m1(f[k]))) for k in range(r)))
    return builder.build()


class Lie2Data:
    """Lie-Rinehart 2-algebra (P0, P1, l1, l2, l3, theta)"""

    def __init__(self, p0: FreeModule, p1: FreeModule, l1: LinearMap,
                 l2_00: Optional[Mapping] = None, l2_01: Optional[Mapping] = None,
                 l3: Optional[Mapping] = None, anchor: Sequence[VectorField] = ()):
        _check_modules(p0, p1, l1)
        n, r = p0.rank, p1.rank
        self.p0 = p0
        self.p1 = p1
        self.l1 = l1
        self.l2_00 = normalize_table(l2_00 or {}, p0, (n, n))
        self.l2_01 = normalize_table(l2_01 or {}, p1, (n, r))
        self.l3 = normalize_table(l3 or {}, p1, (n, n, n))
        for key in self.l3:
            if not key[0] < key[1] < key[2]:
                raise MalformedTableError(f"l3 keys must be strictly increasing, got {key}")
        self.anchor = _normalize_anchor(anchor, p0)

    @property
    def ring(self) -> Ring:
        return self.p0.ring

    @property
    def p0_algebra(self) -> LieRinehartData:
        return LieRinehartData(self.p0, self.l2_00, self.anchor)

    def l2_00_apply(self, x: Element, y: Element) -> Element:
        return self.p0_algebra.bracket(x, y)

    def l2_01_apply(self, x: Element, m: Element) -> Element:
        acc = self.p1.zero()
        for i in x.support():
            for k in m.support():
                value = self.l2_01.get((i, k))
                if value is not None:
                    acc = acc + (x[i] * m[k]) * value
                da = self.anchor[i](m[k])
                if da:
                    acc = acc + (x[i] * da) * self.p1.basis(k)
        return acc

    def l3_value(self, i: int, j: int, k: int) -> Element:
        key, sign = sort_with_sign((i, j, k))
        if len(set(key)) < 3:
            return self.p1.zero()
        value = self.l3.get(key)
        if value is None:
            return self.p1.zero()
        return value if sign > 0 else -value

    def l3_apply(self, x: Element, y: Element, z: Element) -> Element:
        acc = self.p1.zero()
        for i in x.support():
            for j in y.support():
                for k in z.support():
                    value = self.l3_value(i, j, k)
                    if not value.is_zero():
                        acc = acc + (x[i] * y[j] * z[k]) * value
        return acc

    def __eq__(self, other):
        if not isinstance(other, Lie2Data):
            return NotImplemented
        return (self.p0, self.p1, self.l1, self.l2_00, self.l2_01, self.l3, self.anchor) == \
            (other.p0, other.p1, other.l1, other.l2_00, other.l2_01, other.l3, other.anchor)


def verify_lie2(x: Lie2Data) -> Report:
    n, r = x.p0.rank, x.p1.rank
    e = [x.p0.basis(i) for i in range(n)]
    f = [x.p1.basis(k) for k in range(r)]
    l1 = x.l1
    l00, l01, l3 = x.l2_00_apply, x.l2_01_apply, x.l3_apply
    builder = ReportBuilder("Lie-Rinehart 2-algebra")
    zero0 = x.p0.zero()
    builder.check("skew_symmetry", (
        ((i, j), (x.l2_00.get((i, j)) or zero0) + (x.l2_00.get((j, i)) or zero0))
        for i in range(n) for j in range(i, n)
    ))
    builder.check("a1", (((i, k), l1(l01(e[i], f[k])) - l00(e[i], l1(f[k])))
                         for i in range(n) for k in range(r)))
    builder.check("a2", (((k, l), l01(l1(f[k]), f[l]) + l01(l1(f[l]), f[k]))
                         for k in range(r) for l in range(r)))

    def jacobi(i, j, k):
        a, b, c = e[i], e[j], e[k]
        return l1(l3(a, b, c)) - (l00(a, l00(b, c)) + l00(c, l00(a, b)) + l00(b, l00(c, a)))

    def cond_c(i, j, k):
        a, b, u = e[i], e[j], f[k]
        # l2(u, X) = -l2(X, u)
        return l3(a, b, l1(u)) - (l01(a, l01(b, u)) - l01(l00(a, b), u) - l01(b, l01(a, u)))

    builder.check("b", (((i, j, k), jacobi(i, j, k)) for i, j, k in combinations(range(n), 3)))
    builder.check("c", (((i, j, k), cond_c(i, j, k)) for i, j in combinations(range(n), 2) for k in range(r)))

    def jacobiator(idx):
        xs = [e[i] for i in idx]
        acc = x.p1.zero()
        for p in range(4):
            rest = [xs[q] for q in range(4) if q != p]
            term = l01(xs[p], l3(*rest))
            acc = acc + term if p % 2 == 0 else acc - term
        for p, q in combinations(range(4), 2):
            rest = [xs[s] for s in range(4) if s not in (p, q)]
            term = l3(l00(xs[p], xs[q]), *rest)
            acc = acc + term if (p + q) % 2 == 0 else acc - term
        return acc

    builder.check("d", ((idx, jacobiator(idx)) for idx in combinations(range(n), 4)))
    builder.note("i", "anchor rule of l2 holds by table extension")
    builder.note("ii", "l1 and l3 are A-linear by table extension")
    theta = x.p0_algebra.anchor_of
    builder.check("iii", (((i, j), theta(x.l2_00.get((i, j)) or zero0) - x.anchor[i].commutator(x.anchor[j]))
                          for i, j in combinations(range(n), 2)))
    builder.check("iv", (((k,), theta(l1(f[k]))) for k in range(r)))
    return builder.build()


def sub_adjacent_2(x: PreLie2Data, check: bool = True) -> Lie2Data:
    """l2 = m2 - m2 swapped and l3 = cyclic sum of m3"""
    if check:
        _require(verify_prelie2(x), "pre-Lie-Rinehart 2-algebra")
    n, r = x.p0.rank, x.p1.rank
    zero0, zero1 = x.p0.zero(), x.p1.zero()
    l2_00 = {(i, j): (x.m2_00.get((i, j)) or zero0) - (x.m2_00.get((j, i)) or zero0)
             for i in range(n) for j in range(n)}
    l2_01 = {(i, k): (x.m2_01.get((i, k)) or zero1) - (x.m2_10.get((k, i)) or zero1)
             for i in range(n) for k in range(r)}
    l3 = {(i, j, k): x.m3_value(i, j, k) + x.m3_value(k, i, j) + x.m3_value(j, k, i)
          for i, j, k in combinations(range(n), 3)}
    return Lie2Data(x.p0, x.p1, x.m1, l2_00, l2_01, l3, x.anchor)


def strict_to_crossed(x: PreLie2Data, check: bool = True) -> CrossedModuleData:
    """Crossed module with u.v = m2(m1(u), v) on P1"""
    if not x.is_strict:
        raise NotStrictError("m3 must vanish for a strict 2-algebra")
    if check:
        _require(verify_prelie2(x), "pre-Lie-Rinehart 2-algebra")
    r = x.p1.rank
    f = [x.p1.basis(k) for k in range(r)]
    top = {(k, l): x.m2_01_apply(x.m1(f[k]), f[l]) for k in range(r) for l in range(r)}
    return CrossedModuleData(x.p0_algebra, x.p1, top, x.m1, x.representation())


def crossed_to_strict(cm: CrossedModuleData, check: bool = True) -> PreLie2Data:
    """m1 = boundary, m2 from the product and (rho, mu), m3 = 0"""
    if check:
        _require(verify_crossed_module(cm), "crossed module")
    n, r = cm.base.rank, cm.top.rank
    rep = cm.rep
    m2_01 = {(i, k): rep.rho[i].linear_part.column(k) for i in range(n) for k in range(r)}
    m2_10 = {(k, i): rep.mu[i].column(k) for i in range(n) for k in range(r)}
    return PreLie2Data(cm.base.module, cm.top, cm.boundary, cm.base.product, m2_01, m2_10, {}, cm.base.anchor)


def lie_crossed_to_strict(lcm: LieCrossedModuleData, check: bool = True) -> Lie2Data:
    if check:
        _require(verify_lie_crossed_module(lcm), "Lie-Rinehart crossed module")
    n, r = lcm.base.rank, lcm.top.rank
    l2_01 = {(i, k): lcm.rep.rho[i].linear_part.column(k) for i in range(n) for k in range(r)}
    return Lie2Data(lcm.base.module, lcm.top, lcm.boundary, lcm.base.bracket_table, l2_01, {}, lcm.base.anchor)


def skeletal_to_triple(x: PreLie2Data) -> Tuple[PreLieRinehartData, RepresentationData, Cochain]:
    """(P0 algebra, P1 representation, m3 as a 3-cocycle)"""
    if not x.is_skeletal:
        raise NotSkeletalError("m1 must vanish for a skeletal 2-algebra")
    _require(verify_prelie2(x), "pre-Lie-Rinehart 2-algebra")
    rep = x.representation()
    return rep.algebra, rep, x.m3_cochain(rep)


def triple_to_skeletal(alg: PreLieRinehartData, rep: RepresentationData, m3: Cochain) -> PreLie2Data:
    """Skeletal 2-algebra from an algebra, a representation and a prelie 3-cochain"""
    _require(verify_prelie_rinehart(alg), "pre-Lie-Rinehart algebra")
    _require(check_representation(rep), "representation")
    if rep.algebra != alg or m3.rep != rep or m3.kind != PRELIE or m3.degree != 3:
        raise ModuleMismatchError("components do not fit together")
    n, r = alg.rank, rep.target.rank
    m2_01 = {(i, k): rep.rho[i].linear_part.column(k) for i in range(n) for k in range(r)}
    m2_10 = {(k, i): rep.mu[i].column(k) for i in range(n) for k in range(r)}
    m1 = LinearMap.zero(rep.target, alg.module)
    return PreLie2Data(alg.module, rep.target, m1, alg.product, m2_01, m2_10, m3.values, alg.anchor)
