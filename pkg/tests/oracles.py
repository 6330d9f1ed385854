"""Independent reference implementations used only by the tests.

None of these import the package's algorithms; they work from first
principles (point membership, determinantal divisors, flood fill).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import reduce

import sympy


# -- tilings by point membership ------------------------------------------------

def _forward(point, perm, signs, trans, num, den, tile_scale):
    # y[perm[i]] = signs[i] * x[i] * num/den + trans / (tile_scale * den)
    y = [None] * len(point)
    for i, x in enumerate(point):
        y[perm[i]] = signs[i] * x * Fraction(num, den) + Fraction(trans[perm[i]], tile_scale * den)
    return y


def _backward(y, perm, signs, trans, num, den, tile_scale):
    x = [None] * len(y)
    for i in range(len(y)):
        j = perm[i]
        x[i] = (y[j] - Fraction(trans[j], tile_scale * den)) * Fraction(den, num) * signs[i]
    return x


def _inside(tile_cells, tile_scale, x) -> bool:
    cell = tuple(math.floor(v * tile_scale) for v in x)
    return cell in tile_cells


def point_membership_tiles(tile_dim, tile_scale, tile_cells, target_scale, target_cells,
                           placements) -> bool:
    """True iff the placed copies have disjoint interiors and union equal to the target.

    ``placements`` holds ``(perm, signs, trans, num, den)`` tuples.  Every
    sample is the centre of a cell of a grid fine enough that no sample lies
    on a cell wall of any copy or of the target.
    """
    tile_cells = set(tile_cells)
    target_cells = set(target_cells)
    if not placements or not tile_cells:
        return not target_cells and not placements
    fine = target_scale
    for (_, _, _, num, den) in placements:
        fine = math.lcm(fine, tile_scale * den)
    grid = 2 * fine
    lo = [math.inf] * tile_dim
    hi = [-math.inf] * tile_dim
    corners = [Fraction(v, tile_scale) for c in tile_cells for v in c]
    tmin, tmax = min(corners), max(corners) + Fraction(1, tile_scale)
    for p in placements:
        for corner in itertools.product((tmin, tmax), repeat=tile_dim):
            y = _forward(corner, *p, tile_scale)
            lo = [min(a, b) for a, b in zip(lo, y)]
            hi = [max(a, b) for a, b in zip(hi, y)]
    for c in target_cells:
        lo = [min(a, Fraction(v, target_scale)) for a, v in zip(lo, c)]
        hi = [max(a, Fraction(v + 1, target_scale)) for a, v in zip(hi, c)]
    ranges = [range(math.floor(a * grid), math.ceil(b * grid)) for a, b in zip(lo, hi)]
    for idx in itertools.product(*ranges):
        if any(v % 2 == 0 for v in idx):
            continue  # only odd multiples of 1/grid are cell centres of the fine lattice
        y = [Fraction(v, grid) for v in idx]
        hits = sum(_inside(tile_cells, tile_scale, _backward(y, *p, tile_scale)) for p in placements)
        want = tuple(math.floor(v * target_scale) for v in y) in target_cells
        if hits != int(want):
            return False
    return True


def certificate_oracle(cert) -> bool:
    placements = [(p.iso.perm, p.iso.signs, p.iso.trans, p.scale_num, p.scale_den)
                  for p in cert.placements]
    return point_membership_tiles(cert.tile.dim, cert.tile.scale_den, cert.tile.cells,
                                  cert.target.scale_den, cert.target.cells, placements)


# -- Smith normal form by determinantal divisors ---------------------------------

def invariant_factors(rows) -> tuple[int, ...]:
    """Nonzero invariant factors d_k / d_{k-1}, where d_k is the gcd of k x k minors."""
    M = sympy.Matrix(rows)
    r, c = M.shape
    out = []
    prev = 1
    for k in range(1, min(r, c) + 1):
        g = 0
        for I in itertools.combinations(range(r), k):
            for J in itertools.combinations(range(c), k):
                g = math.gcd(g, int(M.extract(list(I), list(J)).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return tuple(out)


# -- homology of low-dimensional polycubes by flood fill ---------------------------

def _components(cells, neighbours) -> list[set]:
    cells = set(cells)
    seen, comps = set(), []
    for start in cells:
        if start in seen:
            continue
        comp, stack = set(), [start]
        seen.add(start)
        while stack:
            c = stack.pop()
            comp.add(c)
            for nb in neighbours(c):
                if nb in cells and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        comps.append(comp)
    return comps


def _all_touching(c):
    for d in itertools.product((-1, 0, 1), repeat=len(c)):
        if any(d):
            yield tuple(a + b for a, b in zip(c, d))


def _facet_touching(c):
    for i in range(len(c)):
        for s in (-1, 1):
            yield c[:i] + (c[i] + s,) + c[i + 1:]


def closed_face_counts(cells) -> list[int]:
    """Number of k-faces of the closed cubical set, k = 0..n."""
    cells = list(cells)
    n = len(cells[0])
    faces = set()
    for c in cells:
        for mask in itertools.product((0, 1), repeat=n):
            for shift in itertools.product(*[(0,) if m else (0, 1) for m in mask]):
                corner = tuple(a + s for a, s in zip(c, shift))
                faces.add((corner, mask))
    counts = [0] * (n + 1)
    for _, mask in faces:
        counts[sum(mask)] += 1
    return counts


def flood_betti(cells) -> tuple[int, ...]:
    """Betti numbers of a 2D or 3D polycube via components, holes and Euler."""
    cells = set(cells)
    n = len(next(iter(cells)))
    if n not in (2, 3):
        raise ValueError("flood oracle handles dimension 2 and 3")
    b0 = len(_components(cells, _all_touching))
    lo = [min(c[i] for c in cells) - 1 for i in range(n)]
    hi = [max(c[i] for c in cells) + 2 for i in range(n)]
    empty = {c for c in itertools.product(*[range(a, b) for a, b in zip(lo, hi)]) if c not in cells}
    holes = len(_components(empty, _facet_touching)) - 1
    chi = sum((-1) ** k * v for k, v in enumerate(closed_face_counts(cells)))
    if n == 2:
        return (b0, holes, 0)
    b1 = b0 + holes - chi
    return (b0, b1, holes, 0)


def gcd_all(values) -> int:
    return reduce(math.gcd, values, 0)
