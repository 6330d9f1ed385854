"""Ball decompositions of [0,1]^n in the boundary pattern used by R* assembly.

Pads are L-infinity balls of radius 1/8 around the pad centres, clipped to
their face, on a lattice of spacing 1/8 (or a multiple of 8).  Each ball is
its pad pushed one cell into the cube unless a custom shape is given.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from importlib import resources

from .lattice import Box, Polycube


def pad_centers(n: int) -> list[tuple[Fraction, ...]]:
    """Centre of the pad N_i on face F_i (x_i = 0), for i = 1..n.

    Even pairs use quarter offsets; the odd leftover face uses halves.  For
    n = 2 the even-pair centres would coincide under the quarter turn, so the
    second pad is moved to (1/4, 0).
    """
    q, h, tq = Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)
    if n < 2:
        raise ValueError("pad pattern needs n >= 2")
    if n == 2:
        return [(Fraction(0), Fraction(1)), (q, Fraction(0))]
    out = []
    for k in range(n // 2):
        a = [q] * n
        a[2 * k], a[2 * k + 1] = Fraction(0), Fraction(1)
        b = [tq] * n
        b[2 * k], b[2 * k + 1] = Fraction(1), Fraction(0)
        out += [tuple(a), tuple(b)]
    if n % 2:
        out.append(tuple([h] * (n - 2) + [Fraction(1), Fraction(0)]))
    return out


def pad_cells(center, axis: int, scale: int) -> set[tuple[int, ...]]:
    """Cells of the one-cell-deep slab under the pad around ``center`` on face ``axis``."""
    if scale % 8:
        raise ValueError("pads of radius 1/8 need a scale that is a multiple of 8")
    r = scale // 8
    ranges = []
    for i, x in enumerate(center):
        if i == axis:
            ranges.append(range(1))
            continue
        lo = max(0, int(x * scale) - r)
        hi = min(scale, int(x * scale) + r)
        ranges.append(range(lo, hi))
    return set(itertools.product(*ranges))


def pattern_fixture(n: int, scale: int = 8, tunnel: bool = False
                    ) -> tuple[Polycube, list[Polycube]]:
    """A decomposition of [0,1]^n into R and n balls in the canonical pattern.

    With ``tunnel`` the first ball continues from its pad through the cube to
    the face x_1 = 1, so R is a cube with a hole drilled through it.
    """
    centers = pad_centers(n)
    balls = [pad_cells(c, i, scale) for i, c in enumerate(centers)]
    if tunnel:
        if n < 3:
            raise ValueError("tunnel fixture needs n >= 3")
        balls[0] |= _tunnel_cells(n, scale, balls[0])
    used = set().union(*balls)
    if sum(len(b) for b in balls) != len(used):
        raise ValueError("pads overlap")
    R = {c for c in Box.cube(n, scale).cells() if c not in used}
    return (Polycube(n, scale, frozenset(R)),
            [Polycube(n, scale, frozenset(b)) for b in balls])


def _tunnel_cells(n: int, scale: int, pad: set) -> set:
    # Step off the pad along x_1, drop along x_2 to mid height, then run to x_1 = 1.
    s = scale // 8
    mid = range(3 * s, 5 * s)
    cross = sorted({c[2:] for c in pad})
    out = set()
    for rest in cross:
        for x2 in range(3 * s, scale):
            out.add((s,) + (x2,) + rest)
        for x1 in range(s, scale):
            for x2 in mid:
                out.add((x1, x2) + rest)
    return out


def load_rstar_fixture(n: int) -> tuple[Polycube, list[Polycube]]:
    """The shipped R* fixture for ``n`` in {2, 3}."""
    from .io import decomposition_from_dict

    name = f"rstar_n{n}.json"
    try:
        text = resources.files("reptile.data").joinpath(name).read_text()
    except FileNotFoundError:
        raise ValueError(f"no shipped R* fixture for n = {n}") from None
    return decomposition_from_dict(json.loads(text))


def build_rstar_fixture(n: int) -> tuple[Polycube, list[Polycube]]:
    """Regenerate the shipped fixtures.

    n = 2 is a hand-shaped 8x8 instance; n = 3 is the tunnel pattern.
    """
    if n == 2:
        return _hand_built_2d()
    if n == 3:
        return pattern_fixture(3, 8, tunnel=True)
    raise ValueError(f"no R* fixture for n = {n}")


def _hand_built_2d() -> tuple[Polycube, list[Polycube]]:
    # x is the first index, y the second; the 8x8 grid is [0,1]^2 at scale 1/8.
    B1 = {(x, 7) for x in range(8)}
    B2 = {(1, 0), (2, 0), (1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (4, 2), (5, 2)}
    R = {c for c in Box.cube(2, 8).cells() if c not in B1 | B2}
    return (Polycube(2, 8, frozenset(R)),
            [Polycube(2, 8, frozenset(B1)), Polycube(2, 8, frozenset(B2))])
