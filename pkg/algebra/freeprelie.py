"""
Free pre-Lie algebras on rooted trees, truncated by node count.

A tree is a root label (generator index) with a sorted tuple of subtrees, so
equal trees compare equal whatever order their children were given in. The
product t1.t2 grafts the root of t1 below every node of t2; with this
convention the associator is symmetric in its first two slots.
"""
from __future__ import annotations

import logging
import string
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.coeffring import Element, FreeModule, LinearMap, Poly, Ring, VectorField, format_fraction
from algebra.errors import MalformedTableError, RingMismatchError
from algebra.linalg import rank
from algebra.report import Report, ReportBuilder
from algebra.structures import PreLieRinehartData, standard_coordinate_algebra
from config.settings import settings

logger = logging.getLogger(__name__)

LABELS = string.ascii_lowercase


@dataclass(frozen=True, order=True)
class RootedTree:
    label: int
    children: Tuple["RootedTree", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(sorted(self.children)))

    @classmethod
    def leaf(cls, label: int) -> "RootedTree":
        return cls(label)

    @property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children)

    def labels(self) -> List[int]:
        out = [self.label]
        for c in self.children:
            out.extend(c.labels())
        return out

    def with_child(self, child: "RootedTree") -> "RootedTree":
        return RootedTree(self.label, self.children + (child,))

    def text(self) -> str:
        name = LABELS[self.label]
        if not self.children:
            return name
        return name + "(" + ",".join(c.text() for c in self.children) + ")"

    def __str__(self) -> str:
        return self.text()

    @classmethod
    def parse(cls, text: str) -> "RootedTree":
        """Read "a(b,a(b))"; children may come in any order"""
        tree, pos = cls._parse_at(text.replace(" ", ""), 0)
        if pos != len(text.replace(" ", "")):
            raise MalformedTableError(f"trailing text in tree {text!r}")
        return tree

    @classmethod
    def _parse_at(cls, text: str, pos: int) -> Tuple["RootedTree", int]:
        if pos >= len(text) or text[pos] not in LABELS:
            raise MalformedTableError(f"expected a label at {pos} in {text!r}")
        label = LABELS.index(text[pos])
        pos += 1
        children = []
        if pos < len(text) and text[pos] == "(":
            pos += 1
            while True:
                child, pos = cls._parse_at(text, pos)
                children.append(child)
                if pos < len(text) and text[pos] == ",":
                    pos += 1
                    continue
                if pos < len(text) and text[pos] == ")":
                    pos += 1
                    break
                raise MalformedTableError(f"unbalanced tree {text!r}")
        return cls(label, tuple(children)), pos


def _graft_all(t1: RootedTree, t2: RootedTree) -> List[RootedTree]:
    """One tree per node of t2, with t1 attached there"""
    out = [t2.with_child(t1)]
    for pos, child in enumerate(t2.children):
        for grafted in _graft_all(t1, child):
            rest = t2.children[:pos] + (grafted,) + t2.children[pos + 1:]
            out.append(RootedTree(t2.label, rest))
    return out


@dataclass
class TreePoly:
    """Rational combination of trees, dropping trees above the bound"""

    terms: Dict[RootedTree, Fraction] = field(default_factory=dict)
    bound: Optional[int] = None
    overflow: bool = False

    def __post_init__(self):
        clean = {}
        for tree, coeff in self.terms.items():
            value = Fraction(coeff)
            if value == 0:
                continue
            if self.bound is not None and tree.size > self.bound:
                self.overflow = True
                continue
            clean[tree] = clean.get(tree, Fraction(0)) + value
            if clean[tree] == 0:
                del clean[tree]
        self.terms = clean

    @classmethod
    def of(cls, tree: RootedTree, bound: Optional[int] = None) -> "TreePoly":
        return cls({tree: Fraction(1)}, bound)

    def _bound_with(self, other: "TreePoly") -> Optional[int]:
        bounds = [b for b in (self.bound, other.bound) if b is not None]
        return min(bounds) if bounds else None

    def __add__(self, other: "TreePoly") -> "TreePoly":
        terms = dict(self.terms)
        for tree, coeff in other.terms.items():
            terms[tree] = terms.get(tree, Fraction(0)) + coeff
        return TreePoly(terms, self._bound_with(other), self.overflow or other.overflow)

    def __neg__(self) -> "TreePoly":
        return TreePoly({t: -c for t, c in self.terms.items()}, self.bound, self.overflow)

    def __sub__(self, other: "TreePoly") -> "TreePoly":
        return self + (-other)

    def __rmul__(self, scalar) -> "TreePoly":
        return TreePoly({t: Fraction(scalar) * c for t, c in self.terms.items()}, self.bound, self.overflow)

    def __mul__(self, other: "TreePoly") -> "TreePoly":
        """Bilinear grafting"""
        bound = self._bound_with(other)
        terms: Dict[RootedTree, Fraction] = {}
        overflow = self.overflow or other.overflow
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                if bound is not None and t1.size + t2.size > bound:
                    overflow = True
                    continue
                for tree in _graft_all(t1, t2):
                    terms[tree] = terms.get(tree, Fraction(0)) + c1 * c2
        return TreePoly(terms, bound, overflow)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TreePoly):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for tree in sorted(self.terms):
            coeff = self.terms[tree]
            parts.append(tree.text() if coeff == 1 else f"({format_fraction(coeff)})*{tree.text()}")
        return " + ".join(parts)


def graft(t1: RootedTree, t2: RootedTree, bound: Optional[int] = None) -> TreePoly:
    return TreePoly.of(t1, bound) * TreePoly.of(t2, bound)


def star_action(word: Sequence[TreePoly], y: TreePoly) -> TreePoly:
    """(x_1 ... x_n) * y = L_{x_1}(...(L_{x_n} y)), the last letter acting first"""
    out = y
    for x in reversed(list(word)):
        out = x * out
    return out


def enumerate_trees(generators: int, size: int) -> List[RootedTree]:
    """All canonical trees with the given node count, sorted"""
    if generators > len(LABELS):
        raise MalformedTableError(f"at most {len(LABELS)} generators")
    if size < 1:
        return []
    level = {RootedTree.leaf(a) for a in range(generators)}
    for _ in range(size - 1):
        grown = set()
        for tree in level:
            for a in range(generators):
                grown.update(_graft_all(RootedTree.leaf(a), tree))
        level = grown
    return sorted(level)


def basis_count(generators: int, size: int) -> int:
    return len(enumerate_trees(generators, size))


def _field_derivative(p: Poly, indices: Sequence[int]) -> Poly:
    for i in indices:
        p = p.derivative(i)
    return p


def derivation_morphism(phi: Sequence[VectorField], tree: RootedTree) -> VectorField:
    """
    Image of a tree under the pre-Lie morphism into (Der(A), X.Y = X(Y^j) d_j)
    extending generator a -> phi[a]

    Args:
        phi: One vector field per generator
        tree: Tree to map

    Returns:
        sum over index tuples of prod F(c_m)^{i_m} d_{i_1..i_k} phi[label]
    """
    root = phi[tree.label]
    ring = root.ring
    images = [derivation_morphism(phi, c) for c in tree.children]
    if not images:
        return root
    comps = []
    for j in range(ring.nvars):
        acc = ring.zero()
        for indices in product(range(ring.nvars), repeat=len(images)):
            coeff = ring.one()
            for image, i in zip(images, indices):
                coeff = coeff * image.components[i]
                if not coeff:
                    break
            if coeff:
                acc = acc + coeff * _field_derivative(root.components[j], indices)
        comps.append(acc)
    return VectorField(ring, comps)


@dataclass
class TruncatedFreeAlgebra:
    """A (x) (trees up to bound nodes), anchored by the morphism extending phi"""

    ring: Ring
    generators: int
    phi: Tuple[VectorField, ...]
    bound: int
    trees: Tuple[RootedTree, ...]
    algebra: PreLieRinehartData

    def index(self, tree: RootedTree) -> int:
        return self.trees.index(tree)

    def element(self, poly: TreePoly) -> Element:
        coeffs = [Fraction(0)] * len(self.trees)
        for tree, coeff in poly.terms.items():
            coeffs[self.index(tree)] = coeff
        return Element(self.algebra.module, coeffs)

    def fits(self, *indices: int) -> bool:
        return sum(self.trees[i].size for i in indices) <= self.bound


def free_prelie_rinehart(ring: Ring, phi: Sequence[VectorField], bound: Optional[int] = None) -> TruncatedFreeAlgebra:
    """
    Free pre-Lie-Rinehart algebra generated by phi: V -> Der(A), modulo trees
    with more than bound nodes

    Args:
        ring: Coefficient ring A
        phi: Vector fields, one per generator of V
        bound: Node bound, PLRK_MAX_TREE_NODES by default

    Returns:
        TruncatedFreeAlgebra with product = grafting and anchor = derivation_morphism
    """
    bound = bound or settings.PLRK_MAX_TREE_NODES
    phi = tuple(phi)
    if not phi:
        raise MalformedTableError("at least one generator is needed")
    for vf in phi:
        if vf.ring != ring:
            raise RingMismatchError("generator field over a different ring")
    g = len(phi)
    trees = tuple(t for n in range(1, bound + 1) for t in enumerate_trees(g, n))
    logger.info("free pre-Lie algebra on %d generators: %d trees up to %d nodes", g, len(trees), bound)
    module = FreeModule(ring, tuple(t.text() for t in trees))
    position = {t: k for k, t in enumerate(trees)}
    table = {}
    for i, t1 in enumerate(trees):
        for j, t2 in enumerate(trees):
            if t1.size + t2.size > bound:
                continue
            coeffs = [Fraction(0)] * len(trees)
            for tree, coeff in graft(t1, t2).terms.items():
                coeffs[position[tree]] += coeff
            table[(i, j)] = Element(module, coeffs)
    anchor = [derivation_morphism(phi, t) for t in trees]
    algebra = PreLieRinehartData(module, table, anchor)
    return TruncatedFreeAlgebra(ring, g, phi, bound, trees, algebra)


def verify_truncated(free: TruncatedFreeAlgebra) -> Report:
    """Anchor law and associator symmetry on tuples whose products stay within the bound"""
    alg = free.algebra
    n = alg.rank
    basis = [alg.basis(i) for i in range(n)]
    builder = ReportBuilder("truncated free pre-Lie-Rinehart algebra")
    pairs = [(i, j) for i, j in combinations(range(n), 2) if free.fits(i, j)]
    triples = [(i, j, k) for i, j in combinations(range(n), 2) for k in range(n) if free.fits(i, j, k)]
    builder.check("anchor_law", (
        ((i, j), alg.anchor_of(alg.commutator(basis[i], basis[j])) - alg.anchor[i].commutator(alg.anchor[j]))
        for i, j in pairs
    ))
    builder.check("associator_symmetry", (
        ((i, j, k), alg.associator(basis[i], basis[j], basis[k]) - alg.associator(basis[j], basis[i], basis[k]))
        for i, j, k in triples
    ))
    skipped_pairs = n * (n - 1) // 2 - len(pairs)
    skipped_triples = n * (n - 1) // 2 * n - len(triples)
    builder.note("overflow", f"{skipped_pairs} pairs and {skipped_triples} triples exceed {free.bound} nodes")
    return builder.build()


def projection_to_coordinates(free: TruncatedFreeAlgebra) -> Tuple[LinearMap, PreLieRinehartData]:
    """pi(a (x) t) = a F(t) into the coordinate algebra of all partials"""
    target = standard_coordinate_algebra(free.ring)
    columns = [Element(target.module, vf.components) for vf in free.algebra.anchor]
    return LinearMap.from_columns(free.algebra.module, target.module, columns), target


def projection_surjective(free: TruncatedFreeAlgebra, max_size: int = 2) -> bool:
    """
    Whether images of trees with at most max_size nodes generate the coordinate
    module, decided by the sufficient test that their constant images span Q^n
    """
    ring = free.ring
    rows = []
    for tree, vf in zip(free.trees, free.algebra.anchor):
        if tree.size > max_size:
            continue
        values = [c.constant_value() for c in vf.components]
        if all(v is not None for v in values):
            rows.append(values)
    if ring.nvars == 0:
        return True
    return rank(rows, ring.nvars) == ring.nvars if rows else False
