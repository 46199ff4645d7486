import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from szlattice.linalg import (
    DependentRowsError,
    bareiss_det,
    dot,
    gram_det_sq,
    gram_schmidt,
    hnf,
    is_lll_reduced,
    kernel_basis,
    lll_reduce,
    norm_sq,
    row_kernel,
)

small = st.integers(-6, 6)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(
            st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]
        )
    )


def random_unimodular(rng, n, steps=8):
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            U[i] = [-a for a in U[i]]
            continue
        c = rng.randint(-3, 3)
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        if rng.random() < 0.3:
            U[i], U[j] = U[j], U[i]
    return U


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def independent_rows(rng, r, n, bound=5):
    while True:
        B = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(r)]
        if gram_det_sq(B):
            return B


# examples


def test_hnf_examples():
    assert hnf([[1, 0], [0, 1]]) == (((1, 0), (0, 1)), 2)
    assert hnf([[2, 4], [1, 2]]) == (((1, 2), (0, 0)), 1)
    assert hnf([[0, 3], [2, 0]]) == (((2, 0), (0, 3)), 2)


def test_hnf_small_unimodular_oracle():
    # [[2,4],[1,2]]: every unimodular image with small multipliers has the same HNF
    for a, b, c, d in itertools.product(range(-2, 3), repeat=4):
        if a * d - b * c in (1, -1):
            M = matmul([[a, b], [c, d]], [[2, 4], [1, 2]])
            assert hnf(M)[0] == ((1, 2), (0, 0))


def test_kernel_examples():
    assert kernel_basis([[1, 0, 0]]) == ((0, 1, 0), (0, 0, 1))
    K = kernel_basis([[1, 2, 2]])
    assert len(K) == 2 and gram_det_sq(K) == 9
    assert kernel_basis([[1, 0], [0, 1]]) == ()


def test_gram_det_examples():
    assert gram_det_sq([[1, 0], [0, 1]]) == 1
    assert gram_det_sq([[1, 2, 2]]) == 9
    assert gram_det_sq([[0, 1, 0], [0, 0, 1]]) == 1


def test_lll_examples():
    out = lll_reduce([[1, 0], [10, 1]])
    assert sorted(tuple(abs(a) for a in v) for v in out) == [(0, 1), (1, 0)]
    assert lll_reduce([[1, 2, 2]]) == ((1, 2, 2),)
    reduced = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert lll_reduce(reduced) == reduced


def test_lll_shortest_basis_oracle():
    # the reduced basis of {(1,0),(10,1)} is as short as any basis with entries <= 10
    best = min(
        norm_sq(u) + norm_sq(v)
        for u in itertools.product(range(-10, 11), repeat=2)
        for v in itertools.product(range(-10, 11), repeat=2)
        if abs(u[0] * v[1] - u[1] * v[0]) == 1
    )
    out = lll_reduce([[1, 0], [10, 1]])
    assert sum(map(norm_sq, out)) == best


def test_lll_errors():
    with pytest.raises(DependentRowsError):
        lll_reduce([[1, 2], [2, 4]])
    with pytest.raises(DependentRowsError):
        lll_reduce([[0, 0]])
    with pytest.raises(ValueError):
        lll_reduce([[1, 0]], delta=Fraction(1, 4))


def test_ragged_matrix_rejected():
    with pytest.raises(ValueError):
        hnf([[1, 2], [3]])


def test_bareiss_matches_permutation_expansion():
    rng = random.Random(5)
    for n in range(1, 5):
        for _ in range(20):
            A = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
            ref = 0
            for perm in itertools.permutations(range(n)):
                inv = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
                term = (-1) ** inv
                for i in range(n):
                    term *= A[i][perm[i]]
                ref += term
            assert bareiss_det(A) == ref


# properties


@given(matrices())
def test_hnf_idempotent(M):
    H, r = hnf(M)
    assert hnf(H) == (H, r)
    for row in H[r:]:
        assert not any(row)


@settings(max_examples=60)
@given(matrices(), st.integers(0, 10**6))
def test_hnf_invariant_under_unimodular_transform(M, seed):
    U = random_unimodular(random.Random(seed), len(M))
    assert hnf(matmul(U, M))[0] == hnf(M)[0]


@given(matrices())
def test_kernel_properties(M):
    cols = len(M[0])
    K = kernel_basis(M)
    for y in K:
        assert all(dot(row, y) == 0 for row in M)
    _, rank = hnf(M)
    assert len(K) + rank == cols
    if K and len(K) < cols:
        # saturated: taking the double orthogonal gives K back
        assert kernel_basis(kernel_basis(K)) == K


@given(st.lists(small, min_size=2, max_size=5).filter(any))
def test_row_kernel_spans_kernel(x):
    R = row_kernel(x)
    assert all(dot(x, y) == 0 for y in R)
    assert hnf(R)[0] == kernel_basis([x])


@given(st.lists(small, min_size=2, max_size=5).filter(any))
def test_kernel_det_is_norm_for_primitive_rows(x):
    from math import gcd
    from functools import reduce

    g = reduce(gcd, x)
    x = [a // g for a in x]
    assert gram_det_sq(kernel_basis([x])) == norm_sq(x)


@settings(max_examples=80)
@given(st.integers(0, 10**6), st.integers(1, 4), st.integers(0, 2))
def test_lll_conditions_and_det(seed, r, extra):
    rng = random.Random(seed)
    n = r + extra
    B = independent_rows(rng, r, n, bound=20)
    for delta in (Fraction(3, 4), Fraction(99, 100)):
        out = lll_reduce(B, delta=delta, sort=False)
        assert is_lll_reduced(out, delta)
        assert gram_det_sq(out) == gram_det_sq(B)
        assert hnf(out)[0] == hnf(B)[0]
        # norm product within alpha^(r(r-1)/4) of det, alpha = 1/(delta - 1/4)
        alpha = 1 / (delta - Fraction(1, 4))
        prod = 1
        for v in out:
            prod *= norm_sq(v)
        assert prod <= alpha ** Fraction(r * (r - 1), 2) * gram_det_sq(B)
        srt = lll_reduce(B, delta=delta)
        assert list(srt) == sorted(out, key=norm_sq)


def test_gram_schmidt_orthogonality():
    B = [[3, 1, 2], [1, 4, 0], [2, 2, 5]]
    mu, bn = gram_schmidt(B)
    prod = Fraction(1)
    for v in bn:
        prod *= v
    assert prod == gram_det_sq(B)
