from fractions import Fraction

from hypothesis import given, settings, strategies as st

from algebra.linalg import nullity, nullspace, rank, rref, solve, sort_with_sign

F = Fraction


def apply(rows, vec):
    return [sum(a * b for a, b in zip(row, vec)) for row in rows]


class TestElimination:
    def test_rref(self):
        reduced, pivots = rref([[2, 4], [1, 3]], 2)
        assert reduced == [[1, 0], [0, 1]]
        assert pivots == (0, 1)

    def test_rank_and_nullity(self):
        rows = [[1, 2, 3], [2, 4, 6]]
        assert rank(rows, 3) == 1
        assert nullity(rows, 3) == 2
        assert rank([], 3) == 0

    def test_nullspace_vectors_are_killed(self):
        rows = [[1, 2, 3], [0, 1, F(1, 2)]]
        basis = nullspace(rows, 3)
        assert len(basis) == 1
        assert apply(rows, basis[0]) == [0, 0]

    @settings(max_examples=20)
    @given(st.lists(st.lists(st.integers(min_value=-3, max_value=3), min_size=3, max_size=3), min_size=1, max_size=3))
    def test_rank_nullity(self, rows):
        assert rank(rows, 3) + len(nullspace(rows, 3)) == 3


class TestSolve:
    def test_particular_solution(self):
        rows = [[1, 1], [1, -1]]
        assert solve(rows, [3, 1], 2) == [2, 1]

    def test_rational_solution(self):
        assert solve([[3]], [1], 1) == [F(1, 3)]

    def test_inconsistent_system(self):
        assert solve([[1, 1], [2, 2]], [1, 3], 2) is None


def test_sort_with_sign():
    assert sort_with_sign((2, 0, 1)) == ((0, 1, 2), 1)
    assert sort_with_sign((1, 0)) == ((0, 1), -1)
