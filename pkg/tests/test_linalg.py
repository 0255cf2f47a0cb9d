from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st
import sympy

from chargedhh.linalg import Matrix, Reducer, identity, nullspace_basis, quotient_basis, rank, rref, zero_matrix


def dense(m):
    return [[int(x) if x.denominator == 1 else x for x in row] for row in m.to_dense()]


def test_rref_identity():
    red, piv = rref(identity(2))
    assert red == identity(2)
    assert piv == [0, 1]


def test_rref_rank_one():
    red, piv = rref(Matrix.from_rows([[1, 2], [2, 4]]))
    assert dense(red) == [[1, 2], [0, 0]]
    assert piv == [0]


def test_rref_swap():
    red, piv = rref(Matrix.from_rows([[0, 1], [1, 0]]))
    assert dense(red) == [[1, 0], [0, 1]]
    assert piv == [0, 1]


def test_nullspace_examples():
    assert nullspace_basis(identity(3)) == []
    assert sorted(nullspace_basis(zero_matrix(2, 3))) == sorted(
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    )
    assert nullspace_basis(Matrix.from_rows([[1, 1]])) == [[-1, 1]]


def test_quotient_basis_examples():
    assert quotient_basis(3, []) == [0, 1, 2]
    assert quotient_basis(2, [[1, -1]]) == [1]
    assert quotient_basis(3, [[1, 0, 0], [0, 1, 0]]) == [2]


def test_reducer_normal_form():
    red = Reducer(3, [[1, -1, 0]])
    assert red.complement == [1, 2]
    assert red.reduce({0: 1}) == {1: 1}
    assert red.reduce({0: 1, 1: -1}) == {}


def test_exact_rationals():
    m = Matrix.from_rows([[Fraction(1, 3), Fraction(2, 7)], [Fraction(2, 3), Fraction(4, 7)]])
    assert rank(m) == 1
    (v,) = nullspace_basis(m)
    assert m.apply(v) == [0, 0]


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-3, 3).map(lambda x: x if abs(x) < 2 else 0), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


def minor_rank(rows):
    """Largest k with a nonzero k x k minor (independent rank oracle)."""
    nr, nc = len(rows), len(rows[0])
    for k in range(min(nr, nc), 0, -1):
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                if sympy.Matrix([[rows[i][j] for j in ci] for i in ri]).det() != 0:
                    return k
    return 0


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_minor_oracle(rows):
    m = Matrix.from_rows(rows)
    assert rank(m) == minor_rank(rows)
    assert len(rref(m)[1]) == rank(m)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_nullity_and_kernel(rows):
    m = Matrix.from_rows(rows)
    ns = nullspace_basis(m)
    assert rank(m) + len(ns) == m.ncols
    for v in ns:
        assert all(x == 0 for x in m.apply(v))
    assert rank(m.transpose()) == rank(m)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_rref_idempotent_and_matches_sympy(rows):
    m = Matrix.from_rows(rows)
    red, piv = rref(m)
    red2, piv2 = rref(red)
    assert red2 == red and piv2 == piv
    s_red, s_piv = sympy.Matrix(rows).rref()
    assert list(s_piv) == piv
    assert [[Fraction(int(x.p), int(x.q)) for x in s_red.row(i)] for i in range(len(rows))] == red.to_dense()


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_quotient_basis_is_complement(rows):
    n = len(rows[0])
    q = quotient_basis(n, rows)
    units = [[int(i == j) for i in range(n)] for j in q]
    assert rank(Matrix.from_rows(rows + units, n)) == n
    assert len(q) == n - rank(Matrix.from_rows(rows))


def test_matmul_and_transpose():
    a = Matrix.from_rows([[1, 2, 0], [0, 1, 3]])
    b = Matrix.from_rows([[1, 0], [0, 1], [1, 1]])
    assert dense(a @ b) == [[1, 2], [3, 4]]
    assert dense(a.transpose()) == [[1, 0], [2, 1], [0, 3]]
    assert (zero_matrix(2, 2)).is_zero()
