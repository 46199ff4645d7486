import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from szlattice.cover import enum_primitive_lattices
from szlattice.lattice import from_generators, full_lattice, random_primitive_lattice
from szlattice.points import ProjPoint, normalize
from szlattice.projective import (
    LinearVariety,
    count_points_on_plane,
    count_proj_space,
    enum_proj_points,
    iter_proj_vectors,
    lattice_from_plane,
    plane_contains,
    plane_from_lattice,
)


def brute_proj(n, B):
    out = set()
    for v in itertools.product(range(-B, B + 1), repeat=n + 1):
        if any(v) and gcd(*v) == 1:
            out.add(normalize(v))
    return sorted(out)


# points


def test_proj_point_invariants():
    p = ProjPoint.parse("-2:-4:6")
    assert p.coords == (1, 2, -3) and p.height == 3 and p.n == 2
    assert str(p) == "1:2:-3"
    with pytest.raises(ValueError):
        ProjPoint((2, 4))
    with pytest.raises(ValueError):
        ProjPoint((-1, 1))
    with pytest.raises(ValueError):
        ProjPoint.from_vector((0, 0, 0))
    with pytest.raises(ValueError):
        ProjPoint.parse("1:x")


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=5).filter(any), st.integers(-7, 7).filter(bool))
def test_normalize_is_scale_invariant(v, lam):
    p = ProjPoint.from_vector(v)
    assert ProjPoint.from_vector([lam * a for a in v]) == p
    assert p.height >= 1


# enumeration


def test_enum_examples():
    assert [p.coords for p in enum_proj_points(1, 1)] == [(0, 1), (1, -1), (1, 0), (1, 1)]
    assert len(enum_proj_points(2, 1)) == 13
    # (0,1), (1,0), (1,+-1), (1,+-2), (2,+-1)
    assert len(enum_proj_points(1, 2)) == 8 == len(brute_proj(1, 2))
    with pytest.raises(ValueError):
        enum_proj_points(2, 0)


@pytest.mark.parametrize("n,B", [(1, 1), (1, 5), (2, 1), (2, 3), (3, 2)])
def test_enum_matches_brute_force(n, B):
    pts = enum_proj_points(n, B)
    assert [p.coords for p in pts] == brute_proj(n, B)
    assert count_proj_space(n, B) == len(pts)


def test_enum_monotone_and_trivially_bounded():
    for n in (1, 2, 3):
        prev = 0
        for B in range(1, 6 if n < 3 else 4):
            c = count_proj_space(n, B)
            assert prev <= c <= (2 * B + 1) ** (n + 1) // 2
            prev = c


def test_iteration_is_lexicographic():
    vs = list(iter_proj_vectors(2, 3))
    assert vs == sorted(vs)


# planes


def line_x2_zero():
    return plane_from_lattice(from_generators([[1, 0, 0], [0, 1, 0]]))


def test_plane_examples():
    P = line_x2_zero()
    assert (P.n, P.k, P.det_sq) == (2, 1, 1)
    assert P.equations() == ((0, 0, 1),)
    assert plane_contains(P, ProjPoint((1, 1, 0)))
    assert not plane_contains(P, ProjPoint((0, 0, 1)))
    Q = plane_from_lattice(from_generators([[1, 2, 2]]))
    assert Q.k == 0 and plane_contains(Q, ProjPoint((1, 2, 2)))
    with pytest.raises(ValueError):
        plane_contains(P, ProjPoint((1, 0)))
    with pytest.raises(ValueError):
        plane_from_lattice(from_generators([[2, 4, 0]]))


def test_count_points_on_plane_examples():
    x0 = plane_from_lattice(from_generators([[0, 1, 0], [0, 0, 1]]))
    assert count_points_on_plane(x0, 1) == 4
    assert count_points_on_plane(plane_from_lattice(full_lattice(3)), 1) == 13
    pt = plane_from_lattice(from_generators([[1, 2, 2]]))
    assert count_points_on_plane(pt, 1) == 0
    assert count_points_on_plane(pt, 2) == 1


@pytest.mark.parametrize("ambient,rank", [(3, 1), (3, 2), (4, 2), (4, 3)])
def test_bijection_on_enumerated_lattices(ambient, rank):
    for L in enum_primitive_lattices(ambient, rank, 16):
        P = plane_from_lattice(L)
        assert lattice_from_plane(P) == L
        assert plane_from_lattice(lattice_from_plane(P)) == P


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_plane_point_counts_match_membership(seed, B):
    rng = random.Random(seed)
    L = random_primitive_lattice(rng, 3, rng.randint(1, 3))
    P = LinearVariety(L)
    allpts = enum_proj_points(2, B)
    on = [x for x in allpts if plane_contains(P, x)]
    assert count_points_on_plane(P, B) == len(on) <= len(allpts)
    for x in on:
        assert all(sum(a * b for a, b in zip(x.coords, e)) == 0 for e in P.equations())
