"""Exact integer matrix kernels: Hermite normal form, integer kernels,
Gram determinants and LLL reduction.

Matrices are plain tuples of integer tuples (rows).  Every routine works on
Python integers, so nothing can overflow.
"""
from fractions import Fraction

__all__ = [
    "DependentRowsError",
    "as_matrix",
    "hnf",
    "kernel_basis",
    "row_kernel",
    "gram_det_sq",
    "bareiss_det",
    "lll_reduce",
    "is_lll_reduced",
    "dot",
    "norm_sq",
]


class DependentRowsError(ValueError):
    """Raised when an operation needs linearly independent rows."""


def as_matrix(rows):
    M = tuple(tuple(int(a) for a in r) for r in rows)
    if M:
        width = len(M[0])
        if any(len(r) != width for r in M):
            raise ValueError("ragged matrix: rows have different lengths")
    return M


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def norm_sq(u):
    return sum(a * a for a in u)


def hnf(M):
    """Row-style Hermite normal form of the integer row space of ``M``.

    Returns ``(H, rank)`` where ``H`` has the same shape as ``M``: the first
    ``rank`` rows are the canonical basis (positive pivots, entries above
    each pivot reduced into ``[0, pivot)``) and the remaining rows are zero.
    """
    A = [list(r) for r in as_matrix(M)]
    if not A:
        return (), 0
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            piv = None
            for i in range(r, m):
                a = A[i][c]
                if a and (piv is None or abs(a) < abs(A[piv][c])):
                    piv = i
            if piv is None:
                break
            A[r], A[piv] = A[piv], A[r]
            prow = A[r]
            p = prow[c]
            clean = True
            for i in range(r + 1, m):
                row = A[i]
                if row[c]:
                    q = row[c] // p
                    for j in range(c, n):
                        row[j] -= q * prow[j]
                    if row[c]:
                        clean = False
            if clean:
                break
        if piv is None:
            continue
        prow = A[r]
        if prow[c] < 0:
            for j in range(c, n):
                prow[j] = -prow[j]
        p = prow[c]
        for i in range(r):
            row = A[i]
            q = row[c] // p
            if q:
                for j in range(c, n):
                    row[j] -= q * prow[j]
        r += 1
    return tuple(tuple(row) for row in A), r


def kernel_basis(M):
    """Basis (in HNF) of the saturated integer kernel ``{y : M y = 0}``.

    Computed by echelonizing ``[M^T | I]``: rows whose left block vanishes
    carry a unimodular-complete basis of the kernel, so the result is
    automatically primitive.  Returns ``()`` when the kernel is trivial.
    """
    M = as_matrix(M)
    if not M:
        raise ValueError("empty matrix")
    m, n = len(M), len(M[0])
    aug = []
    for j in range(n):
        row = [M[i][j] for i in range(m)] + [0] * n
        row[m + j] = 1
        aug.append(row)
    H, rank = hnf(aug)
    ker = [row[m:] for row in H[:rank] if not any(row[:m])]
    if not ker:
        return ()
    K, _ = hnf(ker)
    return K


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def row_kernel(x):
    """Some basis (not HNF) of the integer vectors orthogonal to ``x``.

    Builds a unimodular ``U`` with ``x U = (g, 0, ..., 0)`` by successive
    extended gcds; the last ``len(x) - 1`` columns of ``U`` span the kernel.
    """
    m = len(x)
    if not any(x):
        raise ValueError("zero vector")
    cols = [[int(i == j) for i in range(m)] for j in range(m)]
    y = list(x)
    lead = next(j for j, a in enumerate(y) if a)
    cols[0], cols[lead] = cols[lead], cols[0]
    y[0], y[lead] = y[lead], y[0]
    for j in range(1, m):
        b = y[j]
        if not b:
            continue
        a = y[0]
        g, s, t = _xgcd(a, b)
        ag, bg = a // g, b // g
        c0, cj = cols[0], cols[j]
        cols[0] = [s * u + t * v for u, v in zip(c0, cj)]
        cols[j] = [ag * v - bg * u for u, v in zip(c0, cj)]
        y[0], y[j] = g, 0
    return tuple(tuple(c) for c in cols[1:])


def bareiss_det(G):
    """Determinant of a square integer matrix by fraction-free elimination."""
    A = [list(r) for r in G]
    n = len(A)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def gram_det_sq(B):
    """``det(B B^T)``: the squared covolume of the lattice spanned by the rows.

    Zero exactly when the rows are linearly dependent.
    """
    B = as_matrix(B)
    G = [[dot(u, v) for v in B] for u in B]
    return bareiss_det(G)


def _round_div(a, b):
    # nearest integer to a/b for b > 0, halves rounded up
    return (2 * a + b) // (2 * b)


def lll_reduce(B, delta=Fraction(3, 4), sort=True):
    """LLL-reduce the rows of ``B`` (integral variant, exact arithmetic).

    The reduced basis satisfies the size condition ``|mu_ij| <= 1/2`` and the
    Lovasz condition for ``delta``.  With ``sort=True`` the reduced rows are
    then stably sorted by Euclidean norm; that permutation keeps the lattice
    and the norm product but can break the Lovasz ordering, so callers that
    need the LLL conditions themselves should pass ``sort=False``.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta <= 1:
        raise ValueError("delta must lie in (1/4, 1]")
    p, q = delta.numerator, delta.denominator
    b = [list(r) for r in as_matrix(B)]
    n = len(b)
    if n == 0:
        return ()
    d = [1] * (n + 1)  # d[i+1] = Gram determinant of the first i+1 rows
    lam = [[0] * n for _ in range(n)]
    d[1] = norm_sq(b[0])
    if d[1] == 0:
        raise DependentRowsError("zero row in LLL input")

    def red(k, l):
        dl = d[l + 1]
        lk = lam[k]
        if 2 * abs(lk[l]) > dl:
            r = _round_div(lk[l], dl)
            bk, bl = b[k], b[l]
            for j in range(len(bk)):
                bk[j] -= r * bl[j]
            lk[l] -= r * dl
            ll = lam[l]
            for i in range(l):
                lk[i] -= r * ll[i]

    def swap(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        lk, lk1 = lam[k], lam[k - 1]
        for j in range(k - 1):
            lk[j], lk1[j] = lk1[j], lk[j]
        mu = lk[k - 1]
        big = (d[k - 1] * d[k + 1] + mu * mu) // d[k]
        for i in range(k + 1, kmax + 1):
            li = lam[i]
            t = li[k]
            li[k] = (d[k + 1] * li[k - 1] - mu * t) // d[k]
            li[k - 1] = (big * t + mu * li[k]) // d[k + 1]
        d[k] = big

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise DependentRowsError("rows are linearly dependent")
                    d[k + 1] = u
        red(k, k - 1)
        mu = lam[k][k - 1]
        if q * d[k + 1] * d[k - 1] < p * d[k] * d[k] - q * mu * mu:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    out = [tuple(r) for r in b]
    if sort:
        out.sort(key=norm_sq)
    return tuple(out)


def gram_schmidt(B):
    """Exact rational Gram-Schmidt data ``(mu, bstar_norm_sq)``."""
    B = as_matrix(B)
    n = len(B)
    star = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    bn = []
    for i in range(n):
        v = [Fraction(a) for a in B[i]]
        for j in range(i):
            mu[i][j] = Fraction(dot(B[i], star[j])) / bn[j] if bn[j] else Fraction(0)
            v = [a - mu[i][j] * c for a, c in zip(v, star[j])]
        star.append(v)
        bn.append(sum(a * a for a in v))
    return mu, bn


def is_lll_reduced(B, delta=Fraction(3, 4)):
    """Check the size and Lovasz conditions with rational Gram-Schmidt."""
    mu, bn = gram_schmidt(B)
    n = len(bn)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if bn[k] < (Fraction(delta) - mu[k][k - 1] ** 2) * bn[k - 1]:
            return False
    return True
