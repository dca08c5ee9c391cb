"""
Exact linear algebra over the rationals (field case)
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)

Matrix = List[List[Fraction]]


def _to_domain(rows: Sequence[Sequence[Fraction]], ncols: int) -> DomainMatrix:
    data = [[QQ(int(Fraction(c).numerator), int(Fraction(c).denominator)) for c in row] for row in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _from_domain(matrix: DomainMatrix) -> Matrix:
    dense = matrix.to_Matrix()
    nrows, ncols = matrix.shape
    return [[Fraction(int(dense[i, j].p), int(dense[i, j].q)) for j in range(ncols)] for i in range(nrows)]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[Matrix, Tuple[int, ...]]:
    """
    Reduced row echelon form

    Args:
        rows: Matrix rows of Fractions
        ncols: Number of columns (needed when there are no rows)

    Returns:
        Reduced matrix and the pivot columns
    """
    if not rows or ncols == 0:
        return [list(map(Fraction, r)) for r in rows], ()
    reduced, pivots = _to_domain(rows, ncols).rref()
    return _from_domain(reduced), tuple(pivots)


def rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullity(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    return ncols - rank(rows, ncols)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis of the solutions of M x = 0, one vector per free column"""
    reduced, pivots = rref(rows, ncols)
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][free]
        basis.append(vec)
    return basis


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction], ncols: int) -> Optional[List[Fraction]]:
    """
    One solution of M x = b, or None when the system is inconsistent

    Free variables are set to zero.
    """
    if len(rhs) != len(rows):
        raise ValueError("right-hand side length does not match the number of rows")
    if not rows:
        return [Fraction(0)] * ncols
    augmented = [list(row) + [Fraction(b)] for row, b in zip(rows, rhs)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        logger.debug("inconsistent system of %d equations", len(rows))
        return None
    solution = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        solution[p] = reduced[r][ncols]
    return solution


def sort_with_sign(indices: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    """Sorted indices and the sign of the sorting permutation"""
    items = list(indices)
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sign = -sign
    return tuple(items), sign
