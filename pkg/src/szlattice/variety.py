"""Brute-force point counts on affine and projective varieties."""
from dataclasses import dataclass
from itertools import product

from .lattice import orthogonal_complement
from .polynomial import MultivariatePolynomial
from .projective import iter_proj_vectors

__all__ = [
    "VarietySpec",
    "affine",
    "projective",
    "evaluate",
    "count_affine_points",
    "count_proj_points",
    "proj_points_on",
    "union_of_planes_variety",
    "parallel_lines",
]

AFFINE = "affine"
PROJECTIVE = "projective"


@dataclass(frozen=True)
class VarietySpec:
    """Common zeros of ``generators`` in A^n or P^n.

    Points are those of the presented scheme; ``declared_degree`` is taken
    on trust (e.g. the number of factors of a product of linear forms).
    """

    ambient: str
    n: int
    generators: tuple
    declared_degree: object = None

    def __post_init__(self):
        if self.ambient not in (AFFINE, PROJECTIVE):
            raise ValueError(f"ambient must be {AFFINE!r} or {PROJECTIVE!r}")
        if not self.generators:
            raise ValueError("a variety needs at least one generator")
        object.__setattr__(self, "generators", tuple(self.generators))
        want = self.n if self.ambient == AFFINE else self.n + 1
        for g in self.generators:
            if g.n_vars != want:
                raise ValueError(
                    f"{self.ambient} {self.n}-space needs {want} variables, "
                    f"generator {g} has {g.n_vars}"
                )
            if self.ambient == PROJECTIVE and not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")

    @property
    def degree(self):
        if self.declared_degree is not None:
            return self.declared_degree
        if len(self.generators) == 1:
            return self.generators[0].degree
        return None


def affine(n, *generators, declared_degree=None):
    return VarietySpec(AFFINE, n, generators, declared_degree)


def projective(n, *generators, declared_degree=None):
    return VarietySpec(PROJECTIVE, n, generators, declared_degree)


def evaluate(p, point):
    return p.evaluate(point)


def _on_all(fns, v):
    for f in fns:
        if f(*v):
            return False
    return True


def count_affine_points(V, B):
    """Integer points of ``[-B, B]^n`` on which every generator vanishes."""
    if V.ambient != AFFINE:
        raise ValueError("count_affine_points needs an affine variety")
    if B < 1:
        raise ValueError("B must be >= 1")
    fns = [g.compile() for g in V.generators]
    return sum(1 for v in product(range(-B, B + 1), repeat=V.n) if _on_all(fns, v))


def proj_points_on(V, B):
    if V.ambient != PROJECTIVE:
        raise ValueError("projective counting needs a projective variety")
    for g in V.generators:
        if not g.is_homogeneous():
            raise ValueError(f"generator {g} is not homogeneous")
    if B < 1:
        raise ValueError("B must be >= 1")
    fns = [g.compile() for g in V.generators]
    return [v for v in iter_proj_vectors(V.n, B) if _on_all(fns, v)]


def count_proj_points(V, B):
    """Points of P^n(Q, B) on which every generator vanishes."""
    return len(proj_points_on(V, B))


def union_of_planes_variety(planes):
    """The curve in P^2 given by the product of the linear forms of ``planes``
    (each a line, i.e. a rank-2 lattice in Z^3)."""
    planes = list(planes)
    if not planes:
        raise ValueError("need at least one line")
    product_form = MultivariatePolynomial.constant(1, 3)
    for P in planes:
        L = P.lattice
        if L.ambient_dim != 3 or L.rank != 2:
            raise ValueError(f"{P} is not a line in P^2")
        (normal,) = orthogonal_complement(L).basis
        product_form = product_form * MultivariatePolynomial.linear_form(normal)
    return VarietySpec(PROJECTIVE, 2, (product_form,), declared_degree=len(planes))


def parallel_lines(d):
    """``prod_{i<d} (x0 - i)`` in A^2: d parallel lines."""
    x = MultivariatePolynomial.variable(0, 2)
    p = MultivariatePolynomial.constant(1, 2)
    for i in range(d):
        p = p * (x - i)
    return VarietySpec(AFFINE, 2, (p,), declared_degree=d)
