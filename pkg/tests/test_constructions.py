import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import certificate_oracle, flood_betti
from reptile.constructions import (PatternError, assemble_rstar,
                                   bouquet_certificate, bouquet_violation, box_half_turn, cube_swap,
                                   footprint_labels, footprint_reptile, footprint_reptile_cube,
                                   notch_non_tiler, sphere_certificate, sphere_labels, sphere_reptile,
                                   suspend, thicken, wedge_sum)
from reptile.fixtures import (build_rstar_fixture, load_rstar_fixture, pad_centers,
                              pattern_fixture)
from reptile.homology import homology
from reptile.lattice import LatticeIsometry, Polycube, has_peninsula, random_polycube
from reptile.verify import verify_tiling

S0 = sphere_reptile(0)
S1 = sphere_reptile(1)
ANNULUS = Polycube(2, 1, frozenset((x, y) for x in range(3) for y in range(3) if (x, y) != (1, 1)))


def same_up_to_translation(P, Q):
    return P.normalized() == Q.normalized()


def test_sphere_zero_cells():
    assert S0.sorted_cells() == [(0, 0), (0, 1), (2, 0), (2, 1), (2, 2), (2, 3), (3, 0), (3, 1)]


def test_sphere_cell_counts_and_labels():
    for n in range(4):
        assert len(sphere_reptile(n)) == 4 ** (n + 2) // 2
        assert set(sphere_labels(n).labels()) == {0, 2, 4}


def test_sphere_certificate_matches_oracle():
    assert certificate_oracle(sphere_certificate(0))
    assert certificate_oracle(sphere_certificate(1))


def test_cube_swap_moves_top_cell_onto_hole():
    r = box_half_turn(2)
    out = cube_swap(S0, [(2, 3)], r)
    assert (2, 3) not in out.cells and (1, 0) in out.cells
    assert len(out) == len(S0)
    assert cube_swap(S0, [(2, 3)], LatticeIsometry.identity(2)) == S0


def test_wedge_of_two_circles():
    W = wedge_sum(S1, S1, rescale=False)
    assert len(W) == 2 * len(S1)
    W = wedge_sum(S1, S1)
    assert homology(W).betti == (1, 2, 0, 0)
    assert verify_tiling(bouquet_certificate(W)).ok


def test_thicken():
    T = thicken(S0, 1)
    assert len(T) == 32
    assert homology(T).betti[:3] == homology(S0).betti
    T1 = thicken(S1, 1)
    assert homology(T1).betti[:4] == homology(S1).betti
    assert bouquet_violation(T1) is None
    assert verify_tiling(bouquet_certificate(T1)).ok


def test_suspension_chain():
    Q = suspend(S0)
    assert len(Q) == 4 * len(S0)
    assert homology(Q).betti == (1, 1, 0, 0)
    assert same_up_to_translation(suspend(S0, extra_swap=True), S1)
    assert homology(suspend(S1)).betti == (1, 0, 1, 0, 0)


def test_footprint_annulus():
    S, cert = footprint_reptile(ANNULUS)
    assert S.dim == 3
    assert homology(S).betti == (1, 1, 0, 0)
    assert len(cert.placements) == 2 and verify_tiling(cert).ok
    S2, cert2 = footprint_reptile_cube(ANNULUS)
    assert verify_tiling(cert2).ok
    shape = cert2.target.bounding_box().shape
    assert len(set(shape)) == 1


def test_footprint_of_square_is_a_ball():
    S, _ = footprint_reptile(Polycube(2, 1, frozenset({(0, 0)})))
    assert homology(S).betti == (1, 0, 0, 0)


def test_footprint_labels_pair_up():
    F, k = footprint_labels(ANNULUS)
    for c, h in F.heights.items():
        if c[-1] < 0:
            mirror = c[:-1] + (-1 - c[-1],)
            assert h + F.heights[mirror] == 2 * k + 4


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10**6))
def test_footprint_homology_matches_input(size, seed):
    P = random_polycube(2, size, random.Random(seed))
    S, cert = footprint_reptile(P, check_homology=False)
    assert homology(S).betti[:3] == flood_betti(P.cells)
    assert verify_tiling(cert).ok


def test_notch_examples():
    X = Polycube(3, 1, frozenset({(0, 0, 0)}))
    Y = notch_non_tiler(X)
    assert len(Y) == 26 and not has_peninsula(Y)
    Z = notch_non_tiler(random_polycube(3, 5, random.Random(1)))
    assert len(Z) == 27 * 5 - 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 8), st.integers(0, 10**6))
def test_notch_preserves_homology(dim, size, seed):
    X = random_polycube(dim, size, random.Random(seed))
    Y = notch_non_tiler(X)
    assert not has_peninsula(Y)
    assert homology(Y) == homology(X)
    assert flood_betti(Y.cells) == flood_betti(X.cells)


def test_notch_rejects_disconnected():
    with pytest.raises(ValueError):
        notch_non_tiler(Polycube(2, 1, frozenset({(0, 0), (2, 0)})))


def test_pad_centres_are_distinct():
    for n in (2, 3, 4, 5):
        assert len(set(pad_centers(n))) == n


@pytest.mark.parametrize("n", [2, 3])
def test_rstar_fixtures(n):
    R, balls = load_rstar_fixture(n)
    assert (R, balls) == build_rstar_fixture(n)
    Rstar, cert = assemble_rstar(R, balls)
    assert len(Rstar) == 8 ** n
    assert len(cert.placements) == 2 ** n
    assert verify_tiling(cert).ok
    assert homology(Rstar) == homology(R)


def test_rstar_dimension_four():
    Rstar, cert = assemble_rstar(*pattern_fixture(4))
    assert len(Rstar) == 8 ** 4 and verify_tiling(cert).ok


def test_rstar_rejects_bad_pattern():
    R, balls = pattern_fixture(2)
    swapped = [balls[1], balls[0]]
    with pytest.raises(PatternError):
        assemble_rstar(R, swapped)


def reduced(betti):
    return (betti[0] - 1,) + tuple(betti[1:])


def test_suspension_shifts_reduced_homology():
    for R in (S0, S1):
        b_in = reduced(homology(R).betti)
        b_out = homology(suspend(R)).betti
        assert b_out[0] == 1
        assert all(b_out[k + 1] == b_in[k] for k in range(len(b_in)))


def test_wedge_adds_reduced_homology():
    A, B = thicken(S1, 1), sphere_reptile(2)
    W = wedge_sum(A, B)
    ra, rb = reduced(homology(A).betti), reduced(homology(B).betti)
    assert homology(W).betti == tuple(a + b + (k == 0) for k, (a, b) in enumerate(zip(ra, rb)))
    assert verify_tiling(bouquet_certificate(W)).ok
