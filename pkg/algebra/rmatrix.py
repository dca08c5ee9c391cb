"""
r-matrices, the classical Yang-Baxter residual, induced Poisson brackets and
the Rinehart structures on Kaehler differentials.

An r-matrix is stored by its coefficients r_ij (i < j) on e_i ^ e_j and
expanded through the decomposition r = sum (e_i, r_ij e_j). Every sum over
"x_i ^ y_i" below runs over such a decomposition, so swapping in another one
(see RMatrix.transposed_decomposition) must not change any result.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import pandas as pd

from algebra.coeffring import (
    Element,
    FreeModule,
    Poly,
    Ring,
    VectorField,
    format_fraction,
)
from algebra.errors import MalformedTableError, RingMismatchError, VerificationError
from algebra.linalg import sort_with_sign
from algebra.report import Report, ReportBuilder
from algebra.structures import (
    ActionData,
    LieAlgebraFD,
    LieRinehartData,
    PreLieRinehartData,
    check_action,
    verify_prelie_rinehart,
)

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
Decomposition = List[Tuple[Vector, Vector]]

__all__ = [
    "LieAlgebraFD", "RMatrix", "Wedge3", "PoissonData",
    "cybe_residual", "induced_poisson", "jacobi_residual", "evaluate_trivector",
    "residual_identity_check", "kaehler_module", "kaehler_differential",
    "omega1_prelie", "omega1_lie", "poisson_lie_rinehart", "koszul_bracket",
    "koszul_bracket_terms", "sl2", "sl2_action", "heisenberg", "heisenberg_action",
    "cybe_grid",
]


def _unit(dim: int, i: int, scale: Fraction = Fraction(1)) -> Vector:
    return tuple(scale if k == i else Fraction(0) for k in range(dim))


class RMatrix:
    """r = sum_{i<j} r_ij e_i ^ e_j in g ^ g"""

    def __init__(self, algebra: LieAlgebraFD, coeffs: Optional[Mapping] = None):
        self.algebra = algebra
        table: Dict[Tuple[int, int], Fraction] = {}
        for key, value in (coeffs or {}).items():
            i, j = (int(k) for k in key)
            if not (0 <= i < algebra.dim and 0 <= j < algebra.dim) or i == j:
                raise MalformedTableError(f"r-matrix index {(i, j)} out of range")
            value = Fraction(value)
            if i > j:
                i, j, value = j, i, -value
            value = table.get((i, j), Fraction(0)) + value
            if value:
                table[(i, j)] = value
            else:
                table.pop((i, j), None)
        self.coeffs = table

    @classmethod
    def from_list(cls, algebra: LieAlgebraFD, values: Sequence) -> "RMatrix":
        """Coefficients listed in the order of the pairs i < j"""
        pairs = list(combinations(range(algebra.dim), 2))
        if len(values) != len(pairs):
            raise MalformedTableError(f"{len(values)} coefficients for {len(pairs)} pairs")
        return cls(algebra, dict(zip(pairs, (Fraction(v) for v in values))))

    def as_list(self) -> List[Fraction]:
        return [self.coeffs.get(p, Fraction(0)) for p in combinations(range(self.algebra.dim), 2)]

    def decomposition(self) -> Decomposition:
        dim = self.algebra.dim
        return [(_unit(dim, i), _unit(dim, j, c)) for (i, j), c in sorted(self.coeffs.items())]

    def transposed_decomposition(self) -> Decomposition:
        """The same r written as sum (r_ij e_j) ^ (-e_i)"""
        dim = self.algebra.dim
        return [(_unit(dim, j, c), _unit(dim, i, Fraction(-1))) for (i, j), c in sorted(self.coeffs.items())]

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs


class Wedge3:
    """Element of g ^ g ^ g by coefficients on e_i ^ e_j ^ e_k, i < j < k"""

    def __init__(self, algebra: LieAlgebraFD, coeffs: Optional[Mapping] = None):
        self.algebra = algebra
        self.coeffs: Dict[Tuple[int, int, int], Fraction] = {}
        for key, value in (coeffs or {}).items():
            if Fraction(value):
                self.coeffs[tuple(key)] = Fraction(value)

    def add_product(self, x: Sequence[Fraction], y: Sequence[Fraction], z: Sequence[Fraction],
                    scale: Fraction = Fraction(1)) -> None:
        """Accumulate scale * x ^ y ^ z"""
        for a, ca in enumerate(x):
            if not ca:
                continue
            for b, cb in enumerate(y):
                if not cb or b == a:
                    continue
                for c, cc in enumerate(z):
                    if not cc or c == a or c == b:
                        continue
                    key, sign = sort_with_sign((a, b, c))
                    value = self.coeffs.get(key, Fraction(0)) + sign * scale * ca * cb * cc
                    if value:
                        self.coeffs[key] = value
                    else:
                        self.coeffs.pop(key, None)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int, j: int, k: int) -> Fraction:
        key, sign = sort_with_sign((i, j, k))
        if len(set(key)) < 3:
            return Fraction(0)
        return sign * self.coeffs.get(key, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Wedge3):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __str__(self) -> str:
        names = self.algebra.basis_names
        parts = [f"({format_fraction(c)})*{names[i]}^{names[j]}^{names[k]}"
                 for (i, j, k), c in sorted(self.coeffs.items())]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def cybe_residual(r: RMatrix, decomposition: Optional[Decomposition] = None) -> Wedge3:
    """
    [[r, r]] = sum_ij [x_i,x_j]^y_i^y_j + 2 x_i^[y_i,x_j]^y_j + x_i^x_j^[y_i,y_j]

    Args:
        r: r-matrix
        decomposition: Pairs (x_i, y_i) with r = sum x_i ^ y_i; the stored one by default

    Returns:
        The residual as a trivector; r solves the classical Yang-Baxter equation iff it is zero
    """
    algebra = r.algebra
    pairs = decomposition if decomposition is not None else r.decomposition()
    out = Wedge3(algebra)
    for xi, yi in pairs:
        for xj, yj in pairs:
            out.add_product(algebra.bracket_vectors(xi, xj), yi, yj)
            out.add_product(xi, algebra.bracket_vectors(yi, xj), yj, Fraction(2))
            out.add_product(xi, xj, algebra.bracket_vectors(yi, yj))
    return out


class PoissonData:
    """Bracket {x_i, x_j} for i < j, extended as a biderivation"""

    def __init__(self, ring: Ring, table: Optional[Mapping] = None):
        self.ring = ring
        self.table: Dict[Tuple[int, int], Poly] = {}
        for (i, j), value in (table or {}).items():
            if i >= j:
                raise MalformedTableError(f"Poisson table keys must satisfy i < j, got {(i, j)}")
            if value.ring != ring:
                raise RingMismatchError("Poisson table entry over another ring")
            if value:
                self.table[(i, j)] = value

    def bracket_of_vars(self, i: int, j: int) -> Poly:
        if i < j:
            return self.table.get((i, j), self.ring.zero())
        if i > j:
            return -self.table.get((j, i), self.ring.zero())
        return self.ring.zero()

    def hamiltonian(self, a: Poly) -> VectorField:
        """The vector field {a, -}"""
        n = self.ring.nvars
        comps = [self.ring.zero()] * n
        for i in range(n):
            da = a.derivative(i)
            if not da:
                continue
            for k in range(n):
                entry = self.bracket_of_vars(i, k)
                if entry:
                    comps[k] = comps[k] + da * entry
        return VectorField(self.ring, comps)

    def bracket(self, a: Poly, b: Poly) -> Poly:
        return self.hamiltonian(a)(b)

    def __eq__(self, other):
        if not isinstance(other, PoissonData):
            return NotImplemented
        return self.ring == other.ring and self.table == other.table


def _require_action(action: ActionData) -> None:
    report = check_action(action)
    if not report.passed:
        raise VerificationError("action fails verification", report)


def induced_poisson(r: RMatrix, action: ActionData, check: bool = True) -> PoissonData:
    """{a,b} = sum_i lambda(x_i)(a) lambda(y_i)(b) - lambda(x_i)(b) lambda(y_i)(a)"""
    if check:
        _require_action(action)
    ring = action.ring
    pairs = [(action.of_vector(x), action.of_vector(y)) for x, y in r.decomposition()]
    table = {}
    for i, j in combinations(range(ring.nvars), 2):
        a, b = ring.var(i), ring.var(j)
        value = ring.zero()
        for lx, ly in pairs:
            value = value + lx(a) * ly(b) - lx(b) * ly(a)
        table[(i, j)] = value
    return PoissonData(ring, table)


def jacobi_residual(p: PoissonData, a: Poly, b: Poly, c: Poly) -> Poly:
    """{a,{b,c}} + {c,{a,b}} + {b,{c,a}}"""
    return p.bracket(a, p.bracket(b, c)) + p.bracket(c, p.bracket(a, b)) + p.bracket(b, p.bracket(c, a))


def evaluate_trivector(w: Wedge3, action: ActionData, a: Poly, b: Poly, c: Poly) -> Poly:
    """lambda(w)(a,b,c), with (X^Y^Z)(a,b,c) the determinant of the 3x3 matrix of X(a) .. Z(c)"""
    ring = action.ring
    out = ring.zero()
    for (i, j, k), coeff in w.coeffs.items():
        rows = [[action.images[m](p) for p in (a, b, c)] for m in (i, j, k)]
        det = (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
        out = out + coeff * det
    return out


def residual_identity_check(r: RMatrix, action: ActionData, a: Poly, b: Poly, c: Poly) -> Report:
    """Jacobi residual of the induced bracket against half of lambda([[r,r]])"""
    poisson = induced_poisson(r, action)
    lhs = jacobi_residual(poisson, a, b, c)
    rhs = Fraction(1, 2) * evaluate_trivector(cybe_residual(r), action, a, b, c)
    builder = ReportBuilder("Jacobi residual identity")
    builder.check("residual_identity", [((), lhs - rhs)], detail=f"lhs = {lhs}, rhs = {rhs}")
    builder.note("jacobi_residual", str(lhs))
    return builder.build()


# ----- Kaehler differentials -----

def kaehler_module(ring: Ring) -> FreeModule:
    """Free module on dx_1 .. dx_n"""
    return FreeModule(ring, tuple(f"d{v}" for v in ring.variables))


def kaehler_differential(ring: Ring, p: Poly) -> Element:
    """d p = sum_i (dp/dx_i) dx_i"""
    return Element(kaehler_module(ring), [p.derivative(i) for i in range(ring.nvars)])


def omega1_prelie(r: RMatrix, action: ActionData) -> PreLieRinehartData:
    """
    Pre-Lie-Rinehart structure on 1-forms induced by r and an action

    The structure is returned whether or not r solves the classical
    Yang-Baxter equation; verify it to see which side of the dichotomy r is on.

    Args:
        r: r-matrix on the acting Lie algebra
        action: Lie algebra action on a polynomial ring

    Returns:
        Algebra on dx_1 .. dx_n with anchor pi#(dx_s) = {x_s, -}
    """
    ring = action.ring
    poisson = induced_poisson(r, action)
    module = kaehler_module(ring)
    pairs = [(action.of_vector(x), action.of_vector(y)) for x, y in r.decomposition()]
    table = {}
    for s in range(ring.nvars):
        xs = ring.var(s)
        for t in range(ring.nvars):
            xt = ring.var(t)
            value = module.zero()
            for lx, ly in pairs:
                value = value + lx(xs) * kaehler_differential(ring, ly(xt))
                value = value - ly(xs) * kaehler_differential(ring, lx(xt))
            table[(s, t)] = value
    anchor = [poisson.hamiltonian(ring.var(s)) for s in range(ring.nvars)]
    logger.debug("built 1-form algebra for r = %s", r.as_list())
    return PreLieRinehartData(module, table, anchor)


def poisson_lie_rinehart(poisson: PoissonData) -> LieRinehartData:
    """[dx_s, dx_t] = d{x_s, x_t} with anchor pi#"""
    ring = poisson.ring
    module = kaehler_module(ring)
    table = {}
    for s in range(ring.nvars):
        for t in range(ring.nvars):
            if s != t:
                table[(s, t)] = kaehler_differential(ring, poisson.bracket_of_vars(s, t))
    anchor = [poisson.hamiltonian(ring.var(s)) for s in range(ring.nvars)]
    return LieRinehartData(module, table, anchor)


def omega1_lie(r: RMatrix, action: ActionData) -> LieRinehartData:
    return poisson_lie_rinehart(induced_poisson(r, action))


def koszul_bracket(poisson: PoissonData, alpha: Element, beta: Element) -> Element:
    """Bracket of arbitrary 1-forms"""
    return poisson_lie_rinehart(poisson).bracket(alpha, beta)


def koszul_bracket_terms(poisson: PoissonData, a: Poly, u: Poly, b: Poly, v: Poly) -> Element:
    """[a du, b dv] = a{u,b} dv + b{a,v} du + ab d{u,v}, term by term"""
    ring = poisson.ring
    du = kaehler_differential(ring, u)
    dv = kaehler_differential(ring, v)
    return (
        (a * poisson.bracket(u, b)) * dv
        + (b * poisson.bracket(a, v)) * du
        + (a * b) * kaehler_differential(ring, poisson.bracket(u, v))
    )


# ----- worked examples -----

def sl2() -> LieAlgebraFD:
    """sl(2) on (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h"""
    return LieAlgebraFD(("h", "e", "f"), {
        (0, 1): (0, 2, 0),
        (0, 2): (0, 0, -2),
        (1, 2): (1, 0, 0),
    })


def sl2_action(ring: Optional[Ring] = None) -> ActionData:
    """h -> x1 d1 - x2 d2, e -> x1 d2, f -> x2 d1"""
    ring = ring or Ring(("x1", "x2"))
    if ring.nvars != 2:
        raise RingMismatchError("the sl(2) action needs exactly two variables")
    x1, x2 = ring.var(0), ring.var(1)
    zero = ring.zero()
    return ActionData(sl2(), ring, [
        VectorField(ring, [x1, -x2]),
        VectorField(ring, [zero, x1]),
        VectorField(ring, [x2, zero]),
    ])


def heisenberg() -> LieAlgebraFD:
    """[a1, a2] = a3, all other brackets zero"""
    return LieAlgebraFD(("a1", "a2", "a3"), {(0, 1): (0, 0, 1)})


def heisenberg_action(ring: Optional[Ring] = None) -> ActionData:
    """a1 -> d1, a2 -> x1 d2 + d3, a3 -> d2"""
    ring = ring or Ring(("x1", "x2", "x3"))
    if ring.nvars != 3:
        raise RingMismatchError("the Heisenberg action needs exactly three variables")
    zero, one = ring.zero(), ring.one()
    return ActionData(heisenberg(), ring, [
        VectorField(ring, [one, zero, zero]),
        VectorField(ring, [zero, ring.var(0), one]),
        VectorField(ring, [zero, one, zero]),
    ])


def cybe_grid(values: Iterable[int] = range(-2, 3), action: Optional[ActionData] = None) -> pd.DataFrame:
    """
    Sweep sl(2) r-matrices over a cube of coefficients

    Args:
        values: Coefficients tried for each of r1, r2, r3
        action: sl(2) action, the standard one on Q[x1, x2] by default

    Returns:
        One row per (r1, r2, r3) with the residual, the discriminant r3^2 - 4 r1 r2
        and the verdict of the 1-form pre-Lie-Rinehart verifier
    """
    action = action or sl2_action()
    _require_action(action)
    values = list(values)
    rows = []
    for r1, r2, r3 in product(values, repeat=3):
        r = RMatrix.from_list(action.algebra, [r1, r2, r3])
        residual = cybe_residual(r)
        report = verify_prelie_rinehart(omega1_prelie(r, action))
        rows.append({
            "r1": r1,
            "r2": r2,
            "r3": r3,
            "residual": str(residual),
            "discriminant": r3 * r3 - 4 * r1 * r2,
            "cybe": residual.is_zero(),
            "omega1": report.overall.value,
        })
    return pd.DataFrame(rows, columns=["r1", "r2", "r3", "residual", "discriminant", "cybe", "omega1"])
