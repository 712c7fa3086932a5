import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from instanton4.field import Field
from instanton4.linalg import det, inverse, matmul, nullspace, rank, rref, rref_numpy, solve

F = Field(32003)


def _random_matrix(rng, n, m, p, density=0.5):
    return [[rng.randrange(p) if rng.random() < density else 0 for _ in range(m)] for _ in range(n)]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 12), st.integers(1, 12))
def test_numpy_and_pure_rref_agree(seed, n, m):
    rng = random.Random(seed)
    a = _random_matrix(rng, n, m, F.p, rng.random())
    red, piv = rref(a, F, m)
    nred, npiv = rref_numpy(a, F.p, m)
    assert piv == npiv
    assert red == nred.tolist()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 8), st.integers(1, 8))
def test_nullspace_vectors_are_killed(seed, n, m):
    rng = random.Random(seed)
    a = _random_matrix(rng, n, m, F.p, 0.6)
    ker = nullspace(a, F, m)
    assert len(ker) + rank(a, F) == m
    for v in ker:
        assert all(sum(x * y for x, y in zip(row, v)) % F.p == 0 for row in a)


def test_inverse_and_det():
    rng = random.Random(5)
    while True:
        a = _random_matrix(rng, 4, 4, F.p, 1.0)
        if det(a, F):
            break
    ident = matmul(a, inverse(a, F), F)
    assert ident == [[int(i == j) for j in range(4)] for i in range(4)]
    assert det([[1, 2], [2, 4]], F) == 0


def test_rational_solve():
    Q = Field.rationals()
    x = solve([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]], [Fraction(1), Fraction(2)], Q)
    assert x == [Fraction(1, 5), Fraction(3, 5)]
    assert solve([[Fraction(1)], [Fraction(1)]], [Fraction(0), Fraction(1)], Q) is None


def test_large_matrix_uses_numpy_path_consistently():
    rng = random.Random(7)
    a = _random_matrix(rng, 90, 80, F.p, 0.1)
    assert rank(a, F) == len(rref_numpy(a, F.p)[1])
