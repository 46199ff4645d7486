"""Plane covers of P^n(Q, B), primitive sublattices ordered by determinant,
point counts on the densest planes, and the interval subdivision scheme.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from mpmath import iv, mp, mpf

from .lattice import (
    IntegerLattice,
    orthogonal_complement,
    primitive_points_up_to_sign,
    primitive_vectors,
)
from .linalg import bareiss_det, gram_det_sq, hnf, kernel_basis, lll_reduce, norm_sq, row_kernel
from .projective import LinearVariety, iter_proj_vectors

__all__ = [
    "PlaneCover",
    "LatticeEnumeration",
    "SubdivisionScheme",
    "UnreachableDError",
    "cover_plane_for_point",
    "cover_planes",
    "cover_min_heights",
    "enum_primitive_lattices",
    "densest_lattices",
    "densest_planes_count",
    "subdivide",
    "format_planes",
    "parse_planes",
]


class UnreachableDError(ValueError):
    """Fewer lattices exist within the enumeration limit than were requested."""

    def __init__(self, requested, achievable, hsq_limit):
        super().__init__(
            f"requested d={requested} lattices but only {achievable} have "
            f"det_sq <= {hsq_limit}; achievable d is {achievable}"
        )
        self.requested = requested
        self.achievable = achievable


def _trusted_plane(basis, ambient):
    # kernel_basis output is primitive by construction; skip re-validation
    L = IntegerLattice(tuple(basis), ambient, gram_det_sq(basis))
    P = object.__new__(LinearVariety)
    object.__setattr__(P, "lattice", L)
    return P


def _short_sublattice(v, k):
    # HNF of the span of the n - k shortest reduced vectors orthogonal to v;
    # a prefix of a basis of a primitive lattice, hence itself primitive
    n = len(v) - 1
    reduced = lll_reduce(row_kernel(v))
    return hnf(reduced[: n - k])[0]


def cover_plane_for_point(x, k):
    """The k-plane through ``x`` built from the shortest vectors of the
    lattice orthogonal to ``x``.

    The orthogonal lattice of a primitive ``x`` has rank n and covolume
    ``|x|``.  Its LLL-reduced basis, sorted by norm, gives ``n - k`` short
    vectors; the integer vectors orthogonal to those form a primitive
    rank-(k+1) lattice containing ``x`` with covolume at most the product of
    their norms.
    """
    v = x.coords if hasattr(x, "coords") else tuple(x)
    n = len(v) - 1
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} out of range 1..{n - 1} for a point of P^{n}")
    return _trusted_plane(kernel_basis(_short_sublattice(v, k)), n + 1)


@dataclass(frozen=True)
class PlaneCover:
    """Distinct k-planes jointly containing P^n(Q, B).

    ``min_height`` maps each plane to the smallest height of a point whose
    construction produced it, so covers for smaller B are restrictions.
    """

    n: int
    k: int
    B: int
    planes: tuple
    min_height: dict = field(repr=False, compare=False)

    @property
    def size(self):
        return len(self.planes)

    @property
    def max_det_sq(self):
        return max(P.det_sq for P in self.planes)

    def restrict(self, B):
        if B > self.B:
            raise ValueError("can only restrict to a smaller height")
        keep = tuple(P for P in self.planes if self.min_height[P.lattice.basis] <= B)
        mh = {P.lattice.basis: self.min_height[P.lattice.basis] for P in keep}
        return PlaneCover(self.n, self.k, B, keep, mh)


def cover_min_heights(n, k, B):
    """Map plane basis -> least height of a point sent to that plane."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} out of range 1..{n - 1}")
    best = {}
    for v in iter_proj_vectors(n, B):
        key = _short_sublattice(v, k)
        h = max(map(abs, v))
        if h < best.get(key, B + 1):
            best[key] = h
    return {kernel_basis(key): h for key, h in best.items()}


def cover_planes(n, k, B):
    """Deduplicated cover of P^n(Q, B) by k-planes, one per point's
    :func:`cover_plane_for_point`, sorted by (det_sq, HNF)."""
    best = cover_min_heights(n, k, B)
    planes = sorted((_trusted_plane(b, n + 1) for b in best), key=_plane_key)
    return PlaneCover(n, k, B, tuple(planes), best)


def _plane_key(P):
    return (P.det_sq, P.lattice.basis)


def format_planes(planes):
    """One HNF basis per line: rows joined by ``;``, entries by ``,``."""
    return "".join(str(P) + "\n" for P in planes)


def parse_planes(text):
    from .lattice import parse_lattice

    return [
        LinearVariety(parse_lattice(line))
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]


# Minkowski: for rank <= 4 some basis attains the successive minima, whose
# product is at most gamma_r^(r/2) * det.  These are gamma_r^r.
_HERMITE_POW = {1: Fraction(1), 2: Fraction(4, 3), 3: Fraction(2), 4: Fraction(4)}


def _norm_product_bound(rank):
    """Bound on prod |b_i|^2 / det^2 for a suitable basis of any lattice of
    this rank, and whether that basis is attained by short vectors."""
    if rank in _HERMITE_POW:
        return _HERMITE_POW[rank]
    # LLL basis with delta = 3/4
    return Fraction(2) ** (rank * (rank - 1) // 2)


@dataclass
class LatticeEnumeration:
    """Result of :func:`enum_primitive_lattices`.

    ``radius_sq`` is the squared norm bound on the generators that were
    searched (``None`` when duality made a search unnecessary); ``complete``
    says whether every lattice with ``det_sq <= hsq`` is guaranteed present.
    """

    ambient: int
    rank: int
    hsq: int
    lattices: list
    method: str
    radius_sq: object = None
    complete: bool = True

    def __len__(self):
        return len(self.lattices)

    def __iter__(self):
        return iter(self.lattices)


def _minors_gcd(rows):
    r, n = len(rows), len(rows[0])
    g = 0
    for cols in combinations(range(n), r):
        g = gcd(g, bareiss_det([[row[c] for c in cols] for row in rows]))
        if g == 1:
            return 1
    return g


def _search_lattices(ambient, rank, hsq, radius_sq):
    bound = _norm_product_bound(rank) * hsq
    vecs = primitive_vectors(ambient, radius_sq)
    norms = [norm_sq(v) for v in vecs]
    found = {}

    def rec(start, chosen, prod):
        j = len(chosen)
        if j == rank:
            dsq = gram_det_sq(chosen)
            if 0 < dsq <= hsq and _minors_gcd(chosen) == 1:
                H, _ = hnf(chosen)
                found.setdefault(H, dsq)
            return
        for i in range(start, len(vecs)):
            nv = norms[i]
            # remaining vectors are at least as long as this one
            if prod * nv ** (rank - j) > bound:
                break
            cand = chosen + [vecs[i]]
            if j >= 1 and (gram_det_sq(cand) == 0 or _minors_gcd(cand) != 1):
                continue
            rec(i + 1, cand, prod * nv)

    rec(0, [], 1)
    return [IntegerLattice(b, ambient, d) for b, d in found.items()]


def enum_primitive_lattices(ambient, rank, hsq, method="auto", radius_sq=None):
    """Every primitive rank-``rank`` sublattice of Z^ambient with
    ``det_sq <= hsq``, each once, sorted by (det_sq, HNF).

    ``method="auto"`` uses primitive vectors for rank 1, orthogonal
    complements of those for corank 1 (the complement preserves the
    determinant), and a bounded search over short generators otherwise.
    ``method="search"`` forces the generator search for any rank.
    """
    if not 1 <= rank <= ambient - 1:
        raise ValueError(f"rank must lie in 1..{ambient - 1}")
    if method not in ("auto", "search"):
        raise ValueError(f"unknown method {method!r}")
    if hsq <= 0:
        return LatticeEnumeration(ambient, rank, hsq, [], method)
    if method == "auto" and rank in (1, ambient - 1):
        lines = [IntegerLattice((v,), ambient, norm_sq(v)) for v in primitive_vectors(ambient, hsq)]
        if rank == 1:
            out, how = lines, "vectors"
        else:
            out, how = [orthogonal_complement(L) for L in lines], "duality"
        out.sort(key=lambda L: (L.det_sq, L.basis))
        return LatticeEnumeration(ambient, rank, hsq, out, how)
    provable = int(_norm_product_bound(rank) * hsq)
    if radius_sq is None:
        radius_sq = provable
    out = _search_lattices(ambient, rank, hsq, radius_sq)
    out.sort(key=lambda L: (L.det_sq, L.basis))
    complete = rank <= 4 and radius_sq >= provable
    return LatticeEnumeration(ambient, rank, hsq, out, "search", radius_sq, complete)


def densest_lattices(ambient, rank, d, hsq_limit=1 << 16):
    """The ``d`` primitive lattices of least determinant, ties broken by HNF."""
    if d < 0:
        raise ValueError("d must be >= 0")
    if d == 0:
        return []
    hsq = 1
    while True:
        found = enum_primitive_lattices(ambient, rank, hsq)
        if len(found) >= d:
            return found.lattices[:d]
        if hsq >= hsq_limit:
            raise UnreachableDError(d, len(found), hsq)
        hsq = min(2 * hsq, hsq_limit)


def densest_planes_count(n, k, d, B, hsq_limit=1 << 16):
    """Pick the ``d`` k-planes of P^n with smallest determinant and count the
    distinct rational points of height <= B on their union.

    Returns ``(planes, N)``.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} out of range 1..{n - 1}")
    if B < 1:
        raise ValueError("B must be >= 1")
    lattices = densest_lattices(n + 1, k + 1, d, hsq_limit)
    seen = set()
    for L in lattices:
        seen.update(p.coords for p in primitive_points_up_to_sign(L, B))
    planes = [_trusted_plane(L.basis, n + 1) for L in lattices]
    return planes, len(seen)


@dataclass(frozen=True)
class SubdivisionScheme:
    """Endpoints ``H = b_0 > b_1 > ... > b_K`` with
    ``b_{i+1} = b_i - b_i^((k-1)/k)``, stopping at the first ``b_K < 2``.

    Endpoints are mpmath floats at ``prec`` bits (exact rationals when
    k = 1); :meth:`verify` re-derives every endpoint as a certified
    interval and checks the scheme's inequalities on those intervals.
    """

    H: object
    k: int
    endpoints: tuple
    prec: int

    @property
    def declared_bits(self):
        """Relative accuracy (in bits) promised for every endpoint."""
        return self.prec - 40

    @property
    def K(self):
        return len(self.endpoints) - 1

    def f(self, i):
        """Comparison function ``(k H^(1/k) - i)^k / k^k``; ``f(0) = H``."""
        k = self.k
        if k == 1:
            return Fraction(self.H) - i
        with mp.workprec(self.prec):
            return (k * mpf(self.H) ** (mpf(1) / k) - i) ** k / mpf(k) ** k

    def verify(self):
        """Certified checks of every invariant; each value is True only
        when the inequality provably holds."""
        if self.k == 1:
            return self._verify_exact()
        k, H = self.k, self.H
        saved = iv.prec
        iv.prec = self.prec
        try:
            return self._verify_intervals(k, H)
        finally:
            iv.prec = saved

    def _verify_intervals(self, k, H):
        e = (iv.mpf(k) - 1) / k
        Hi = _iv_exact(H)
        encl = [Hi]
        for _ in range(self.K):
            b = encl[-1]
            encl.append(b - b**e)
        two = iv.mpf(2)
        root = Hi ** (iv.mpf(1) / k)
        u_max = k * root
        ratio_cap = 1 / (1 - two ** (-1 / iv.mpf(k)))
        checks = {
            "starts_at_H": _agrees(self.endpoints[0], encl[0], self.declared_bits),
            "recurrence": all(
                _agrees(b, I, self.declared_bits) for b, I in zip(self.endpoints, encl)
            ),
            "enclosure_tight": all(_width_ok(I, self.prec) for I in encl),
            "last_above_2": (encl[-2] >= two) is True,
            "final_below_2": (encl[-1] < two) is True,
            "K_bound": (iv.mpf(self.K) <= u_max) is True,
            "ratio_bound": all(
                _ratio_ok(encl[i], encl[i + 1], ratio_cap, two) for i in range(self.K)
            ),
        }
        ok = True
        i = 0
        while (iv.mpf(i + 1) <= u_max) is True:
            u = u_max - i
            fi = u**k / iv.mpf(k) ** k
            fi1 = (u - 1) ** k / iv.mpf(k) ** k
            if not ((fi - fi1 <= u ** (k - 1) / iv.mpf(k) ** (k - 1)) is True):
                ok = False
                break
            i += 1
        checks["f_step_bound"] = ok
        checks["f0_is_H"] = (abs((u_max**k) / iv.mpf(k) ** k - Hi) <= iv.mpf(2) ** (10 - self.prec) * Hi) is True
        return checks

    def _verify_exact(self):
        H = Fraction(self.H)
        b = self.endpoints
        K = self.K
        return {
            "starts_at_H": b[0] == H,
            "recurrence": all(b[i + 1] == b[i] - 1 for i in range(K)),
            "enclosure_tight": True,
            "last_above_2": b[K - 1] >= 2,
            "final_below_2": b[K] < 2,
            "K_bound": K <= H,
            "ratio_bound": all(b[i] / b[i + 1] <= 2 for i in range(K)),
            "f_step_bound": True,
            "f0_is_H": self.f(0) == H,
        }


def _iv_exact(H):
    if isinstance(H, Fraction):
        return iv.mpf(H.numerator) / H.denominator
    return iv.mpf(H)


def _ratio_ok(b, b_next, cap, two):
    verdict = b / b_next <= cap
    if verdict is None:
        # b/b_next = 1/(1 - b^(-1/k)) decreases in b and meets the cap at b = 2
        return (b >= two) is True
    return verdict


def _agrees(b, I, bits):
    tol = iv.mpf(2) ** (-bits) * (abs(I.mid) + 1)
    return (abs(iv.mpf(b) - I) <= tol) is True


def _width_ok(I, prec):
    mid = abs(I.mid)
    return I.delta <= iv.mpf(2) ** (40 - prec) * (mid + 1)


def subdivide(H, k, prec=160):
    """Build the endpoint sequence for ``[2, H]`` with step ``b^((k-1)/k)``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if isinstance(H, str):
        H = Fraction(H)
    if H < 2:
        raise ValueError("H must be >= 2")
    if k == 1:
        b = [Fraction(H)]
        while b[-1] >= 2:
            b.append(b[-1] - 1)
        return SubdivisionScheme(Fraction(H), 1, tuple(b), prec)
    with mp.workprec(prec):
        Hm = mpf(H.numerator) / H.denominator if isinstance(H, Fraction) else mpf(H)
        e = mpf(k - 1) / k
        b = [Hm]
        while b[-1] >= 2:
            b.append(b[-1] - b[-1] ** e)
    return SubdivisionScheme(H, k, tuple(b), prec)

