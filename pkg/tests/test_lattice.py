import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reptile.constructions import sphere_reptile
from reptile.homology import homology
from reptile.lattice import (COORD_BOUND, Box, LatticeIsometry, Polycube, PseudomanifoldError,
                             apply_isometry, boundary_components, complement_in_box,
                             connected_components, has_peninsula, is_connected, random_polycube,
                             refine)

CHAIR = Polycube(2, 1, frozenset({(0, 0), (1, 0), (0, 1)}))


@st.composite
def isometries(draw, dim=None):
    n = dim if dim is not None else draw(st.integers(1, 4))
    perm = draw(st.permutations(range(n)))
    signs = draw(st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n))
    trans = draw(st.lists(st.integers(-20, 20), min_size=n, max_size=n))
    return LatticeIsometry(tuple(perm), tuple(signs), tuple(trans))


@st.composite
def polycubes(draw, dim=None, max_size=12):
    n = dim if dim is not None else draw(st.integers(1, 3))
    size = draw(st.integers(1, max_size))
    seed = draw(st.integers(0, 10**6))
    return random_polycube(n, size, random.Random(seed))


def test_rotation_by_pi_about_2_2():
    g = LatticeIsometry((0, 1), (-1, -1), (4, 4))
    assert g.apply_cell((0, 0)) == (3, 3)


def test_quarter_turn_about_origin():
    r1 = LatticeIsometry((1, 0), (1, -1), (0, 0))  # (x, y) -> (-y, x)
    assert r1.apply_point((1, 0)) == (0, 1)
    assert r1.apply_cell((0, 0)) == (-1, 0)


def test_identity_leaves_polycube_unchanged():
    P = sphere_reptile(0)
    assert apply_isometry(LatticeIsometry.identity(2), P) == P


def test_refine_counts():
    assert len(refine(Polycube(2, 1, frozenset({(0, 0)})), 2)) == 4
    assert len(refine(CHAIR, 3)) == 27
    assert refine(CHAIR, 3).volume() == CHAIR.volume()


def test_complement_and_core_counts():
    B = Box.cube(3, 4)
    assert len(complement_in_box(B.to_polycube(), B)) == 0
    for n in (1, 2):
        core = Polycube(n + 1, 1, frozenset(c for c in Box.cube(n + 1, 4).cells()
                                            if all(x in (1, 2) for x in c)))
        assert len(core) == 2 ** (n + 1)
        assert len(complement_in_box(core, Box.cube(n + 1, 4))) == 4 ** (n + 1) - 2 ** (n + 1)
    core2 = Polycube(2, 1, frozenset({(1, 1), (1, 2), (2, 1), (2, 2)}))
    assert len(complement_in_box(core2, Box.cube(2, 4))) == 12


def test_connected_components():
    assert len(connected_components(Polycube(2, 1, frozenset({(0, 0)})))) == 1
    corner = Polycube(2, 1, frozenset({(0, 0), (1, 1)}))
    assert len(connected_components(corner)) == 2
    assert not is_connected(corner)
    assert len(connected_components(sphere_reptile(0))) == 2


def test_boundary_components():
    assert boundary_components(Polycube(3, 1, frozenset({(0, 0, 0)}))) == 1
    assert boundary_components(Polycube(3, 1, frozenset({(0, 0, 0), (5, 5, 5)}))) == 2
    assert boundary_components(sphere_reptile(1)) == 1


def test_boundary_components_rejects_edge_contact():
    P = Polycube(3, 1, frozenset({(0, 0, 0), (1, 1, 0)}))
    with pytest.raises(PseudomanifoldError):
        boundary_components(P)


def test_peninsulas():
    assert has_peninsula(Polycube(2, 1, frozenset({(0, 0), (1, 0)})))
    assert not has_peninsula(Polycube(2, 1, frozenset({(0, 0)})))


def test_coordinate_bound_enforced():
    with pytest.raises((ValueError, OverflowError)):
        Polycube(1, 1, frozenset({(COORD_BOUND,)}))


@given(isometries(), isometries(), isometries())
def test_composition_is_associative(f, g, h):
    if not (f.dim == g.dim == h.dim):
        return
    assert (f @ g) @ h == f @ (g @ h)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(isometries(n), isometries(n))))
def test_compose_applies_right_factor_first(pair):
    g, h = pair
    x = tuple(range(3, 3 + g.dim))
    assert (g @ h).apply_point(x) == g.apply_point(h.apply_point(x))


@given(isometries())
def test_inverse(g):
    assert (g @ g.inverse()).is_identity()
    assert (g.inverse() @ g).is_identity()


@given(isometries(), st.data())
def test_cell_image_matches_point_image_of_centre(g, data):
    c = tuple(data.draw(st.lists(st.integers(-9, 9), min_size=g.dim, max_size=g.dim)))
    centre = [Fraction(2 * v + 1, 2) for v in c]
    image = [None] * g.dim
    for i, x in enumerate(centre):
        image[g.perm[i]] = g.signs[i] * x + g.trans[g.perm[i]]
    assert g.apply_cell(c) == tuple(int(v - Fraction(1, 2)) for v in image)


@settings(max_examples=40, deadline=None)
@given(polycubes(dim=2, max_size=8), st.integers(2, 3))
def test_refine_preserves_homology(P, k):
    assert homology(refine(P, k)) == homology(P)


@settings(max_examples=40)
@given(polycubes(max_size=10))
def test_refine_by_three_has_no_peninsula(P):
    if P.dim >= 2:
        assert not has_peninsula(refine(P, 3))


@settings(max_examples=30)
@given(polycubes(max_size=15))
def test_random_polycube_is_connected(P):
    assert is_connected(P)
    assert min(c for cell in P.cells for c in cell) >= 0
