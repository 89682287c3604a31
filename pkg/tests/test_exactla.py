
import pytest
from hypothesis import given, settings, strategies as st

from gerstenhaber.exactla import (
    DimensionError, Matrix, Subspace, image, kernel, rref, solve, solve_matrix,
)
from gerstenhaber.scalars import cyclotomic, prime_field

FIELDS = [cyclotomic(2), cyclotomic(3), prime_field(7, 3)]


def dense_rank(F, rows):
    """Plain Gauss elimination on dense Scalar lists, used as an oracle."""
    A = [[F(v) for v in r] for r in rows]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        p = next((i for i in range(rank, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[rank], A[p] = A[p], A[rank]
        for i in range(len(A)):
            if i != rank and A[i][c] != 0:
                f = A[i][c] / A[rank][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rank])]
        rank += 1
    return rank


def matrices(max_dim=6):
    def build(shape):
        r, c = shape
        entry = st.one_of(st.just(0), st.just(0), st.integers(-3, 3), st.fractions(-2, 2, max_denominator=3))
        return st.lists(st.lists(entry, min_size=c, max_size=c), min_size=r, max_size=r)
    return st.tuples(st.integers(1, max_dim), st.integers(1, max_dim)).flatmap(build)


def coerce_rows(F, rows):
    if F.characteristic:
        return [[int(v) if isinstance(v, int) else int(v.numerator) * pow(v.denominator, -1, F.characteristic)
                 for v in r] for r in rows]
    return rows


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), matrices())
def test_rank_matches_dense_oracle(F, rows):
    rows = coerce_rows(F, rows)
    M = Matrix.from_rows(F, rows)
    assert M.rank() == dense_rank(F, rows)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), matrices())
def test_rank_nullity(F, rows):
    M = Matrix.from_rows(F, coerce_rows(F, rows))
    K = kernel(M)
    assert K.dim + M.rank() == M.cols
    assert image(M).dim == M.rank()
    for v in K.basis:
        assert M.apply(v) == {}


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), matrices(), st.data())
def test_solve_consistent_rhs(F, rows, data):
    M = Matrix.from_rows(F, coerce_rows(F, rows))
    x = {j: F.from_int(data.draw(st.integers(-3, 3))) for j in range(M.cols)}
    x = {j: v for j, v in x.items() if not F.is_zero(v)}
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None and M.apply(y) == b


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELDS), matrices())
def test_rref_transform(F, rows):
    M = Matrix.from_rows(F, coerce_rows(F, rows))
    R, piv, P = rref(M, with_transform=True)
    assert len(piv) == M.rank()
    top = Matrix(F, len(piv), M.cols, R.data[:len(piv)])
    assert P @ M == top
    for k, c in enumerate(piv):
        assert R.get(k, c) == F.one
        assert all(F.is_zero(R.get(i, c)) for i in range(len(piv)) if i != k)


def test_solve_inconsistent():
    F = cyclotomic(3)
    M = Matrix.from_rows(F, [[1, 1], [2, 2]])
    assert solve(M, {0: F.one}) is None
    assert solve_matrix(M, Matrix.from_rows(F, [[1], [0]])) is None
    X = solve_matrix(M, Matrix.from_rows(F, [[1], [2]]))
    assert M @ X == Matrix.from_rows(F, [[1], [2]])


def test_cyclotomic_entries():
    F = cyclotomic(3)
    # rows (1, w) and (w^2, 1) are dependent since w^3 = 1
    M = Matrix.from_rows(F, [["1", "w"], ["w^2", "1"]])
    assert M.rank() == 1
    assert kernel(M).dim == 1


def test_subspace_coordinates():
    F = cyclotomic(2)
    S = Subspace.span(F, 3, [{0: F.one, 1: F.one}, {2: F.one}])
    v = {0: F.from_int(2), 1: F.from_int(2), 2: F.from_int(5)}
    c = S.coordinates(v)
    assert c is not None
    assert S.coordinates({0: F.one}) is None
    assert S.complement_columns() == [1]


def test_dimension_errors():
    F = cyclotomic(2)
    with pytest.raises(DimensionError):
        Matrix.from_rows(F, [[1, 2], [3]])
    A = Matrix.identity(F, 2)
    with pytest.raises(DimensionError):
        A @ Matrix.identity(F, 3)
    with pytest.raises(DimensionError):
        solve(A, {5: F.one})


def test_kron_and_transpose():
    F = cyclotomic(2)
    A = Matrix.from_rows(F, [[1, 2], [0, 1]])
    B = Matrix.from_rows(F, [[0, 1], [1, 0]])
    K = A.kron(B)
    assert K.shape == (4, 4)
    assert K.get(0, 3) == F.from_int(2)
    assert (A @ B).transpose() == B.transpose() @ A.transpose()
    assert A.rank() == 2
