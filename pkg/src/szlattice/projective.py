"""Rational points of bounded height and the plane/lattice correspondence.

A k-plane of P^n is stored as the primitive rank-(k+1) sublattice of
Z^(n+1) spanned by the integer points of its affine cone; its rational
points of height <= B are the primitive lattice vectors in the box
[-B, B]^(n+1), taken up to sign.
"""
from dataclasses import dataclass
from itertools import product
from math import gcd

from .lattice import (
    IntegerLattice,
    format_lattice,
    is_primitive,
    orthogonal_complement,
    primitive_points_up_to_sign,
)
from .points import ProjPoint

__all__ = [
    "ProjPoint",
    "LinearVariety",
    "iter_proj_vectors",
    "enum_proj_points",
    "count_proj_space",
    "plane_from_lattice",
    "lattice_from_plane",
    "plane_contains",
    "count_points_on_plane",
]


@dataclass(frozen=True, order=True)
class LinearVariety:
    """A full-rank k-plane in P^n, identified with its primitive lattice."""

    lattice: IntegerLattice

    def __post_init__(self):
        L = self.lattice
        if L.rank < 1 or L.ambient_dim < 2:
            raise ValueError("a plane needs a lattice of rank >= 1 in Z^(n+1), n >= 1")
        if not is_primitive(L):
            raise ValueError(f"lattice {format_lattice(L)} is not primitive")

    @property
    def n(self):
        return self.lattice.ambient_dim - 1

    @property
    def k(self):
        return self.lattice.rank - 1

    @property
    def det_sq(self):
        return self.lattice.det_sq

    def equations(self):
        """Integer linear forms cutting out the plane (HNF basis of the
        orthogonal lattice); empty for the whole space."""
        if self.lattice.rank == self.lattice.ambient_dim:
            return ()
        return orthogonal_complement(self.lattice).basis

    def __str__(self):
        return format_lattice(self.lattice)


def iter_proj_vectors(n, B):
    """Canonical representatives of P^n(Q, B) as raw tuples, in
    lexicographic order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if B < 1:
        raise ValueError("B must be >= 1")
    tail_range = range(-B, B + 1)
    # Leading zeros sort first, so walk the lead position from the right.
    for lead in range(n, -1, -1):
        zeros = (0,) * lead
        for a in range(1, B + 1):
            if lead == n:
                if a == 1:
                    yield zeros + (1,)
                continue
            for tail in product(tail_range, repeat=n - lead):
                if gcd(a, *tail) == 1:
                    yield zeros + (a,) + tail


def enum_proj_points(n, B):
    """All points of P^n(Q) of height <= B, canonical and sorted."""
    return [ProjPoint(v) for v in iter_proj_vectors(n, B)]


def count_proj_space(n, B):
    return sum(1 for _ in iter_proj_vectors(n, B))


def plane_from_lattice(L):
    """The plane of dimension ``L.rank - 1`` whose affine cone is spanned by ``L``."""
    return LinearVariety(L)


def lattice_from_plane(P):
    return P.lattice


def plane_contains(P, x):
    if len(x.coords) != P.lattice.ambient_dim:
        raise ValueError(
            f"point {x} lives in P^{x.n}, plane lives in P^{P.n}"
        )
    return P.lattice.contains(x.coords)


def count_points_on_plane(P, B):
    """Exact number of rational points of height <= B on the plane."""
    return len(primitive_points_up_to_sign(P.lattice, B))
