import random

from hypothesis import given, settings, strategies as st

from tropmod.linalg import SparseMatrix, rank_mod_p, smith_normal_form

from oracles import dense_rank, dense_snf


def snf(rows):
    return smith_normal_form(SparseMatrix.from_dense(rows))


def test_examples():
    assert snf([[2, 4], [6, 8]]) == (2, [2, 4])
    assert snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == (3, [1, 1, 1])
    assert snf([[0, 0], [0, 0]]) == (0, [])


def test_round_trip_dense():
    rows = [[1, 0, -2], [0, 0, 3]]
    M = SparseMatrix.from_dense(rows)
    assert M.to_dense() == rows
    assert M.nnz() == 3


matrices = st.integers(1, 7).flatmap(lambda m: st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


@settings(max_examples=200)
@given(matrices)
def test_snf_matches_dense_oracle(rows):
    rank, factors = snf(rows)
    expected = [f for f in dense_snf(rows) if f]
    assert rank == len(expected) == dense_rank(rows)
    assert sorted(factors) == sorted(expected)
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0


def test_sparse_boundary_like_matrices():
    rng = random.Random(7)
    for _ in range(30):
        m, n = rng.randint(5, 25), rng.randint(5, 25)
        rows = [[rng.choice((0, 0, 0, 1, -1)) for _ in range(n)] for _ in range(m)]
        rank, factors = snf(rows)
        assert sorted(factors) == sorted(f for f in dense_snf(rows) if f)
        assert rank_mod_p(SparseMatrix.from_dense(rows), 10007) == rank
