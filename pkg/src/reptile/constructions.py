"""Explicit rep-tile constructions built from stacks of cubes and cube swaps.

Every construction that claims a tiling checks its certificate with
:func:`reptile.verify.verify_tiling` before returning and raises
:class:`ConstructionError` if the check fails.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Sequence

from .homology import homology
from .lattice import (Box, Cell, LatticeIsometry, Polycube, apply_isometry,
                      has_peninsula, is_connected, refine)
from .rotations import (all_words, half_turn_last, quarter_turn,
                        rotation_word_to_isometry, plane_rotation)
from .stacks import LabeledFootprint, footprint_of, stack_from_footprint
from .verify import (PatternReport, Placement, TilingCertificate, check_unit_cube_partition,
                     validate_boundary_pattern, verify_tiling)


class ConstructionError(RuntimeError):
    """A construction produced output that failed its own certificate."""


class PatternError(ValueError):
    def __init__(self, report: PatternReport):
        super().__init__(f"boundary pattern violates property ({report.property}) "
                         f"on face F_{report.face}: {report.message}")
        self.report = report


def _certified(cert: TilingCertificate) -> TilingCertificate:
    report = verify_tiling(cert)
    if not report:
        raise ConstructionError(f"tiling certificate failed: {report.reason} at {report.witness}")
    return cert


def _two_copy_certificate(P: Polycube, g: LatticeIsometry, target: Polycube) -> TilingCertificate:
    return TilingCertificate(P, target, (Placement.identity(P.dim), Placement(g)))


# -- spheres -----------------------------------------------------------------

def sphere_labels(n: int) -> LabeledFootprint:
    """Labels on [0,4]^{n+1}: 4 on the upper core, 0 on the lower core, 2 on the shell."""
    if n < 0:
        raise ValueError("n must be non-negative")
    heights = {}
    for c in itertools.product(range(4), repeat=n + 1):
        if all(x in (1, 2) for x in c):
            heights[c] = 4 if c[-1] == 2 else 0
        else:
            heights[c] = 2
    return LabeledFootprint(n + 1, 1, heights, 4)


def sphere_reptile(n: int) -> Polycube:
    """The stack of cubes in [0,4]^{n+2} homeomorphic to S^n x D^2."""
    return stack_from_footprint(sphere_labels(n))


def box_half_turn(dim: int, scale_den: int = 1) -> LatticeIsometry:
    """Rotation by pi about x_{dim-1} = x_dim = 2 (ambient), on a 1/scale_den lattice."""
    c = 2 * scale_den
    return plane_rotation(dim, (dim - 2, dim - 1), 2, (c, c))


def sphere_certificate(n: int) -> TilingCertificate:
    S = sphere_reptile(n)
    target = Box.cube(n + 2, 4).to_polycube()
    return _certified(_two_copy_certificate(S, box_half_turn(n + 2), target))


# -- cube swaps and bouquets -------------------------------------------------

def cube_swap(P: Polycube, U: Iterable[Cell], g: LatticeIsometry) -> Polycube:
    """Replace the cells ``U`` of ``P`` by their images under ``g``."""
    U = frozenset(tuple(c) for c in U)
    if not U <= P.cells:
        bad = min(U - P.cells)
        raise ValueError(f"cell {list(bad)} of the swapped set is not in the polycube")
    kept = P.cells - U
    moved = frozenset(g.apply_cell(c) for c in U)
    clash = moved & kept
    if clash:
        raise ValueError(f"swapped cell lands on retained cell {list(min(clash))}")
    return P.with_cells(kept | moved)


def bouquet_violation(P: Polycube) -> str | None:
    """Why ``P`` fails the two bouquet conditions, or None if it satisfies both.

    (1) the slices at x_1 = 0 and x_1 = 4 are exactly [0,4]^{d-2} x [0,2];
    (2) ``P`` and its half turn about x_{d-1} = x_d = 2 tile [0,4]^d.
    """
    d, m = P.dim, P.scale_den
    if d < 2:
        return "dimension must be at least 2"
    side = 4 * m
    expected = {c + (h,) for c in itertools.product(range(side), repeat=d - 2)
                for h in range(2 * m)}
    for x1 in (0, side - 1):
        face = {c[1:] for c in P.cells if c[0] == x1}
        if face != expected:
            return f"condition (1): slice x_1 = {x1} is not [0,4]^{d - 2} x [0,2]"
    box = Box.cube(d, side).to_polycube(m)
    cert = _two_copy_certificate(P, box_half_turn(d, m), box)
    if not verify_tiling(cert):
        return "condition (2): the polycube and its half turn do not tile [0,4]^d"
    return None


def _require_bouquet(P: Polycube, name: str) -> None:
    why = bouquet_violation(P)
    if why:
        raise ValueError(f"{name} fails {why}")


def wedge_sum(R1: Polycube, R2: Polycube, rescale: bool = True) -> Polycube:
    """Glue ``R2`` after ``R1`` along x_1, then squeeze x_1 by half.

    Inputs on different lattices are first refined to a common one.  With
    ``rescale=False`` the side-by-side union in [0,8] x [0,4]^{d-1} is
    returned unchanged.
    """
    if R1.dim != R2.dim:
        raise ValueError("wedge summands must have equal dimension")
    m = math.lcm(R1.scale_den, R2.scale_den)
    R1, R2 = R1.at_scale(m), R2.at_scale(m)
    _require_bouquet(R1, "first summand")
    _require_bouquet(R2, "second summand")
    shift = (4 * m,) + (0,) * (R1.dim - 1)
    union = R1.cells | R2.translate(shift).cells
    if not rescale:
        return R1.with_cells(union)
    d = R1.dim
    offsets = list(itertools.product((0, 1), repeat=d - 1))
    cells = frozenset((c[0],) + tuple(2 * x + o for x, o in zip(c[1:], off))
                      for c in union for off in offsets)
    out = Polycube(d, 2 * m, cells)
    _require_bouquet(out, "wedge output")
    return out


def thicken_half_turn(dim: int, extra: int, scale_den: int = 1) -> LatticeIsometry:
    """The input's half turn, carried to the axes it occupies after :func:`thicken`."""
    axes = [a if a == 0 else a + extra for a in (dim - 2, dim - 1)]
    c = 2 * scale_den
    return plane_rotation(dim + extra, (axes[0], axes[1]), 2, (c, c))


def thicken(S: Polycube, extra: int) -> Polycube:
    """Product with [0,4]^extra, new axes inserted right after x_1.

    For inputs of dimension at least 3 the output again satisfies both bouquet
    conditions.  A 2-dimensional input has x_1 inside its rotation plane, so
    the output is certified against the lifted half turn instead.
    """
    if extra < 1:
        raise ValueError("extra must be at least 1")
    _require_bouquet(S, "input")
    m = S.scale_den
    side = 4 * m
    cells = frozenset(c[:1] + t + c[1:] for c in S.cells
                      for t in itertools.product(range(side), repeat=extra))
    out = Polycube(S.dim + extra, m, cells)
    if S.dim >= 3:
        _require_bouquet(out, "thickened output")
    else:
        box = Box.cube(out.dim, side).to_polycube(m)
        _certified(_two_copy_certificate(out, thicken_half_turn(S.dim, extra, m), box))
    return out


def bouquet_certificate(P: Polycube) -> TilingCertificate:
    d, m = P.dim, P.scale_den
    box = Box.cube(d, 4 * m).to_polycube(m)
    return _certified(_two_copy_certificate(P, box_half_turn(d, m), box))


# -- suspension ----------------------------------------------------------------

def suspend(R: Polycube, r: LatticeIsometry | None = None, extra_swap: bool = False) -> Polycube:
    """Suspend a two-copy stack tiling of [0,4]^n into dimension n+1.

    The new axis is inserted first, so the result is again a stack along the
    last axis and ``r`` keeps acting on the same coordinates.  In the slices
    [0,1] and [3,4] of the new axis, the top cells of full-height columns are
    swapped under ``r`` onto the height-0 holes.  ``extra_swap`` also moves the
    next cell of those columns, which evens the traded columns out.
    """
    n, m = R.dim, R.scale_den
    if r is None:
        r = box_half_turn(n, m)
    if r.dim != n:
        raise ValueError("rotation dimension does not match the polycube")
    side = 4 * m
    F = footprint_of(R)
    if F.max_height > side:
        raise ValueError(f"stack is taller than {side} lattice units")
    box = Box.cube(n, side).to_polycube(m)
    if not verify_tiling(_two_copy_certificate(R, r, box)):
        raise ValueError("the polycube and its rotated copy do not tile [0,4]^n")

    layered = frozenset((t,) + c for c in R.cells for t in range(side))
    P = Polycube(n + 1, m, layered)
    g = r.extend(before=1)
    ends = [t for t in range(side) if t < m or t >= 3 * m]
    full = [c[:-1] for c in R.cells if c[-1] == side - 1]
    top = [(t,) + f + (side - 1,) for t in ends for f in full]
    P = cube_swap(P, top, g)
    if extra_swap:
        below = [(t,) + f + (side - 2,) for t in ends for f in full]
        P = cube_swap(P, below, g)
    out_box = Box.cube(n + 1, side).to_polycube(m)
    _certified(_two_copy_certificate(P, g, out_box))
    return P


# -- arbitrary footprints --------------------------------------------------------

def _finger_footprint(P: Polycube) -> tuple[Polycube, int]:
    """Move ``P`` into [0,k+2]^{d} and connect it to a full base slab by a finger."""
    d = P.dim
    P0 = P.normalized()
    widest = max(P0.bounding_box().shape)
    k = max(2, widest + (widest % 2))
    axis = d - 1
    shifted = P0.translate((0,) * axis + (2,))
    lowest = min(c[axis] for c in shifted.cells)
    root = min(c for c in shifted.cells if c[axis] == lowest)
    finger = {root[:axis] + (z,) for z in range(1, lowest)}
    slab = {c + (0,) for c in itertools.product(range(k + 2), repeat=axis)}
    return shifted.with_cells(shifted.cells | finger | slab), k


def footprint_labels(P: Polycube) -> tuple[LabeledFootprint, int]:
    """Heights of the two-copy stack whose footprint retracts onto ``P``.

    Returns the labeled footprint over [0,k+2]^{d-1} x [-(k+2), k+2] and ``k``.
    """
    if not P.cells:
        raise ValueError("footprint polycube must be nonempty")
    if not is_connected(P):
        raise ValueError("footprint polycube must be connected")
    Pp, k = _finger_footprint(P)
    d = P.dim
    top = k + 2
    heights = {}
    ranges = [range(top)] * (d - 1) + [range(-top, top)]
    for c in itertools.product(*ranges):
        if c[-1] >= 0:
            heights[c] = top if c in Pp.cells else 0
        else:
            mirror = c[:-1] + (-1 - c[-1],)
            heights[c] = top if mirror in Pp.cells else 2 * top
    return LabeledFootprint(d, P.scale_den, heights, 2 * top), k


def footprint_rotation(n: int, k: int) -> LatticeIsometry:
    """Half turn about x_{n-1} = 0, x_n = k+2."""
    return plane_rotation(n, (n - 2, n - 1), 2, (0, k + 2))


def footprint_reptile(P: Polycube, check_homology: bool = True
                      ) -> tuple[Polycube, TilingCertificate]:
    """An n-dimensional stack, homotopic to the (n-1)-polycube ``P``, that 2-tiles a box.

    The certificate's target is [0,k+2]^{n-2} x [-(k+2), k+2] x [0, 2k+4].
    """
    F, k = footprint_labels(P)
    S = stack_from_footprint(F)
    n = S.dim
    top = k + 2
    box = Box((0,) * (n - 2) + (-top, 0), (top,) * (n - 2) + (top, 2 * top))
    cert = _certified(_two_copy_certificate(S, footprint_rotation(n, k), box.to_polycube(S.scale_den)))
    if check_homology and homology(S).betti[:P.dim + 1] != homology(P).betti:
        raise ConstructionError("footprint stack is not homologous to the input")
    return S, cert


def stretch_axes(P: Polycube, axes: Sequence[int], factor: int) -> Polycube:
    """Scale the listed axes by an integer factor, replicating cells."""
    offsets = list(itertools.product(range(factor), repeat=len(axes)))
    cells = set()
    for c in P.cells:
        for off in offsets:
            cc = list(c)
            for a, o in zip(axes, off):
                cc[a] = factor * c[a] + o
            cells.add(tuple(cc))
    return P.with_cells(cells)


def footprint_reptile_cube(P: Polycube) -> tuple[Polycube, TilingCertificate]:
    """Same as :func:`footprint_reptile` with the first n-2 axes doubled so two copies tile a cube."""
    S, cert = footprint_reptile(P)
    n = S.dim
    top = cert.target.bounding_box().hi[-2]
    S2 = stretch_axes(S, range(n - 2), 2)
    side = 2 * top
    box = Box((0,) * (n - 2) + (-top, 0), (side,) * (n - 2) + (top, side))
    cert2 = _certified(_two_copy_certificate(S2, cert.placements[1].iso, box.to_polycube(S.scale_den)))
    return S2, cert2


# -- non-tilers ------------------------------------------------------------------

def _boundary_sides(P: Polycube, cell: Cell) -> list[tuple[int, int]]:
    """(axis, -1 | +1) for every facet of ``cell`` on the boundary of ``P``."""
    out = []
    for i in range(P.dim):
        for s in (-1, 1):
            nb = cell[:i] + (cell[i] + s,) + cell[i + 1:]
            if nb not in P.cells:
                out.append((i, s))
    return out


def notch_non_tiler(X: Polycube) -> Polycube:
    """Refine by 3 and cut the sub-cell at the centre of one boundary facet.

    The result has no peninsula, while the notch can only be filled by a
    peninsula of another copy.  In dimension 2 the notched cell must have a
    single boundary facet; if none exists the polycube is first refined by 2
    (at most twice).
    """
    if not X.cells:
        raise ValueError("polycube must be nonempty")
    if X.dim < 2:
        raise ValueError("notch construction needs dimension at least 2")
    if not is_connected(X):
        raise ValueError("polycube must be connected")
    work = X
    choice = None
    for _ in range(3):
        for c in work.sorted_cells():
            sides = _boundary_sides(work, c)
            if sides and (work.dim >= 3 or len(sides) == 1):
                choice = (c, sides[0])
                break
        if choice or work.dim >= 3:
            break
        work = refine(work, 2)
    if choice is None:
        raise ConstructionError("no cell meets the boundary in exactly one facet")
    cell, (axis, side) = choice
    fine = refine(work, 3)
    notch = tuple(3 * x + (1 if i != axis else (0 if side < 0 else 2)) for i, x in enumerate(cell))
    out = fine.with_cells(fine.cells - {notch})
    if has_peninsula(out):
        raise ConstructionError("notched polycube has a peninsula")
    return out


# -- R* assembly -------------------------------------------------------------------

def rstar_neighbor_maps(n: int) -> list[LatticeIsometry]:
    """Isometry carrying B_i into its neighbouring cube, for i = 1..n."""
    maps = []
    for k in range(1, n // 2 + 1):
        r = quarter_turn(n, k)
        maps.extend([r.inverse(), r])
    if n % 2:
        maps.append(half_turn_last(n) @ quarter_turn(n, n // 2).inverse())
    return maps


def assemble_rstar(R: Polycube, balls: Sequence[Polycube]
                   ) -> tuple[Polycube, TilingCertificate]:
    """Boundary-sum ``R`` with rotated copies of the balls and certify the 2^n tiling of [-1,1]^n."""
    check_unit_cube_partition(R, balls)
    report = validate_boundary_pattern(R, balls)
    if not report:
        raise PatternError(report)
    n, m = R.dim, R.scale_den
    cells = set(R.cells)
    for g, B in zip(rstar_neighbor_maps(n), balls):
        moved = apply_isometry(g, B).cells
        if moved & cells:
            raise ConstructionError("rotated ball overlaps the assembled tile")
        cells |= moved
    Rstar = R.with_cells(cells)
    target = Box.cube(n, 2 * m, lo=-m).to_polycube(m)
    placements = tuple(Placement(rotation_word_to_isometry(w)) for w in all_words(n))
    cert = _certified(TilingCertificate(Rstar, target, placements))
    return Rstar, cert

