"""Sublattices of Z^n as canonical values, plus box enumeration."""
from dataclasses import dataclass, field
from math import ceil, floor, sqrt

from .linalg import as_matrix, gram_det_sq, hnf, kernel_basis, lll_reduce, norm_sq
from .points import ProjPoint, content, is_sign_normalized

__all__ = [
    "IntegerLattice",
    "from_generators",
    "saturate",
    "is_primitive",
    "orthogonal_complement",
    "points_in_box",
    "count_points_in_box",
    "primitive_points_up_to_sign",
    "random_primitive_lattice",
    "format_lattice",
    "parse_lattice",
]


@dataclass(frozen=True, order=True)
class IntegerLattice:
    """A nonzero sublattice of Z^n with its basis in row Hermite normal form.

    Two lattices compare equal iff they are the same subgroup of Z^n.
    Build instances with :func:`from_generators`; the constructor trusts
    that ``basis`` is already canonical.
    """

    basis: tuple
    ambient_dim: int = field(compare=False)
    det_sq: int = field(compare=False)

    @property
    def rank(self):
        return len(self.basis)

    def contains(self, v):
        """Membership of the integer vector ``v`` by reduction against the HNF."""
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        w = list(v)
        for row in self.basis:
            c = next(j for j, a in enumerate(row) if a)
            if w[c] % row[c]:
                return False
            q = w[c] // row[c]
            if q:
                for j in range(c, len(w)):
                    w[j] -= q * row[j]
        return not any(w)

    def __str__(self):
        return format_lattice(self)


def _from_hnf_rows(rows, n):
    basis = tuple(rows)
    return IntegerLattice(basis, n, gram_det_sq(basis))


def from_generators(gens):
    """The lattice spanned over Z by the rows of ``gens``."""
    M = as_matrix(gens)
    if not M or not M[0]:
        raise ValueError("no generators given")
    H, rank = hnf(M)
    if rank == 0:
        raise ValueError("generators span the zero lattice")
    return _from_hnf_rows(H[:rank], len(M[0]))


def full_lattice(n):
    return _from_hnf_rows([tuple(int(i == j) for j in range(n)) for i in range(n)], n)


def saturate(L):
    """``(L tensor Q) cap Z^n``: the smallest primitive lattice containing ``L``."""
    n = L.ambient_dim
    if L.rank == n:
        return full_lattice(n)
    K = kernel_basis(L.basis)
    return _from_hnf_rows(kernel_basis(K), n)


def is_primitive(L):
    if L.rank == L.ambient_dim:
        return L.det_sq == 1
    return saturate(L) == L


def orthogonal_complement(L):
    """Integer vectors orthogonal to ``L``; always a primitive lattice."""
    if L.rank == L.ambient_dim:
        raise ValueError("a full-rank lattice has zero orthogonal complement")
    return _from_hnf_rows(kernel_basis(L.basis), L.ambient_dim)


def _gso_float(R):
    n = len(R)
    star, bn = [], []
    mu = [[0.0] * n for _ in range(n)]
    for i in range(n):
        v = [float(a) for a in R[i]]
        for j in range(i):
            mu[i][j] = sum(a * b for a, b in zip(R[i], star[j])) / bn[j]
            v = [a - mu[i][j] * c for a, c in zip(v, star[j])]
        star.append(v)
        bn.append(sum(a * a for a in v))
    return mu, bn


def _leaf_interval(partial, b0, B):
    # integers t with |partial_j + t*b0_j| <= B for every coordinate j
    lo, hi = None, None
    for p, a in zip(partial, b0):
        if a == 0:
            if abs(p) > B:
                return 1, 0
            continue
        if a > 0:
            l, h = -((B + p) // a), (B - p) // a
        else:
            l, h = -((B - p) // -a), (B + p) // -a
        lo = l if lo is None or l > lo else lo
        hi = h if hi is None or h < hi else hi
        if lo > hi:
            return 1, 0
    return lo, hi


def _walk_box(L, B, leaf):
    """Fincke-Pohst traversal of the lattice points in ``[-B, B]^n``.

    Outer levels are pruned by the ball of radius ``sqrt(n) B`` (floating
    point with outward slack, so the pruning is conservative); the innermost
    level is solved exactly as an intersection of integer intervals.  Calls
    ``leaf(partial, b0, lo, hi)`` for every nonempty innermost range.
    """
    R = lll_reduce(L.basis, sort=False)
    r, n = len(R), L.ambient_dim
    mu, bn = _gso_float(R)
    radius_sq = n * B * B * (1 + 1e-9) + 1e-6
    b0 = R[0]

    def rec(level, coeffs, partial, used):
        if level == 0:
            lo, hi = _leaf_interval(partial, b0, B)
            if lo <= hi:
                leaf(partial, b0, lo, hi)
            return
        c = -sum(mu[j][level] * coeffs[j] for j in range(level + 1, r))
        rem = radius_sq - used
        if rem < 0:
            return
        w = sqrt(rem / bn[level]) + 1e-7
        row = R[level]
        for t in range(floor(c - w), ceil(c + w) + 1):
            du = (t - c) ** 2 * bn[level]
            if du > rem + 1e-6:
                continue
            coeffs[level] = t
            rec(level - 1, coeffs, [p + t * a for p, a in zip(partial, row)], used + du)
        coeffs[level] = 0

    rec(r - 1, [0] * r, [0] * n, 0.0)


def points_in_box(L, B):
    """Lattice points (zero included) with every coordinate in ``[-B, B]``,
    in lexicographic order."""
    if B < 1:
        raise ValueError("B must be >= 1")
    out = []

    def leaf(partial, b0, lo, hi):
        for t in range(lo, hi + 1):
            out.append(tuple(p + t * a for p, a in zip(partial, b0)))

    _walk_box(L, B, leaf)
    out.sort()
    return out


def count_points_in_box(L, B):
    """``len(points_in_box(L, B))`` without materializing the points."""
    if B < 1:
        raise ValueError("B must be >= 1")
    total = 0

    def leaf(partial, b0, lo, hi):
        nonlocal total
        total += hi - lo + 1

    _walk_box(L, B, leaf)
    return total


def primitive_points_up_to_sign(L, B):
    """Primitive vectors of ``L`` in the box, one per sign pair, as points."""
    return [
        ProjPoint(v)
        for v in points_in_box(L, B)
        if is_sign_normalized(v) and content(v) == 1
    ]


def random_primitive_lattice(rng, ambient, rank, bound=3):
    """Saturation of ``rank`` random independent vectors with entries in
    ``[-bound, bound]``."""
    if not 1 <= rank <= ambient:
        raise ValueError("rank out of range")
    while True:
        gens = [[rng.randint(-bound, bound) for _ in range(ambient)] for _ in range(rank)]
        if gram_det_sq(gens) != 0:
            return saturate(from_generators(gens))


def format_lattice(L):
    """One-line text form: rows separated by ``;``, entries by ``,``."""
    return ";".join(",".join(str(a) for a in row) for row in L.basis)


def parse_lattice(text):
    rows = [[int(a) for a in part.split(",")] for part in text.strip().split(";") if part.strip()]
    return from_generators(rows)


def primitive_vectors(n, radius_sq):
    """Primitive sign-normalized vectors of Z^n with squared norm at most
    ``radius_sq``, sorted by (norm, lexicographic)."""
    out = []

    def rec(prefix, left):
        if len(prefix) == n:
            if is_sign_normalized(prefix) and content(prefix) == 1:
                out.append(tuple(prefix))
            return
        m = int(sqrt(left)) + 1
        while m * m > left:
            m -= 1
        for a in range(-m, m + 1):
            prefix.append(a)
            rec(prefix, left - a * a)
            prefix.pop()

    if radius_sq >= 1:
        rec([], radius_sq)
    out.sort(key=lambda v: (norm_sq(v), v))
    return out

