"""Plane rotations and the rotation family that tiles [-1, 1]^n with unit cubes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .lattice import LatticeIsometry


def plane_rotation(n: int, axes: tuple[int, int], quarter_turns: int,
                   center: Sequence = (0, 0)) -> LatticeIsometry:
    """Rotation by ``quarter_turns * pi/2`` in the plane of ``axes = (a, b)``.

    One quarter turn carries the ``a`` axis onto the ``b`` axis.  ``center``
    gives the ``(x_a, x_b)`` coordinates of the fixed (n-2)-plane and must be
    integral in lattice units.
    """
    a, b = axes
    if a == b or not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"invalid rotation axes {axes} for dimension {n}")
    if quarter_turns not in (1, 2, 3):
        raise ValueError("quarter_turns must be 1, 2 or 3")
    if len(center) != 2:
        raise ValueError("center gives the two in-plane coordinates")
    c = [Fraction(x) for x in center]
    if any(x.denominator != 1 for x in c):
        raise ValueError(f"rotation center {center} is not a lattice point at this scale")
    ca, cb = int(c[0]), int(c[1])
    perm = list(range(n))
    signs = [1] * n
    perm[a], perm[b] = b, a
    signs[b] = -1
    quarter = LatticeIsometry(tuple(perm), tuple(signs), (0,) * n)
    lin = quarter.power(quarter_turns)
    centre = [0] * n
    centre[a], centre[b] = ca, cb
    image = lin.apply_point(centre)
    trans = tuple(x - y for x, y in zip(centre, image))
    return LatticeIsometry(lin.perm, lin.signs, trans)


def quarter_turn(n: int, k: int) -> LatticeIsometry:
    """The rotation r_k (k >= 1) by pi/2 in the plane of axes 2k-1, 2k (1-based)."""
    if not 1 <= k <= n // 2:
        raise ValueError(f"r_{k} undefined in dimension {n}")
    return plane_rotation(n, (2 * k - 2, 2 * k - 1), 1)


def half_turn_last(n: int) -> LatticeIsometry:
    """f: rotation by pi about the plane x_{n-1} = x_n = 0."""
    return plane_rotation(n, (n - 2, n - 1), 2)


@dataclass(frozen=True)
class RotationWord:
    dim: int
    y: tuple[int, ...]
    f_flag: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "y", tuple(int(v) % 4 for v in self.y))
        if len(self.y) != self.dim // 2:
            raise ValueError(f"word for dimension {self.dim} needs {self.dim // 2} entries")
        if self.f_flag not in (0, 1):
            raise ValueError("f_flag must be 0 or 1")
        if self.dim % 2 == 0 and self.f_flag:
            raise ValueError("f_flag must be 0 in even dimension")


def rotation_word_to_isometry(w: RotationWord) -> LatticeIsometry:
    n = w.dim
    g = LatticeIsometry.identity(n)
    for k, yk in enumerate(w.y, start=1):
        if yk:
            g = quarter_turn(n, k).power(yk) @ g
    if w.f_flag:
        g = g @ half_turn_last(n)
    return g


def all_words(n: int) -> Iterator[RotationWord]:
    """The 2^n words whose images of [0,1]^n tile [-1,1]^n."""
    flags = (0,) if n % 2 == 0 else (0, 1)
    for y in itertools.product(range(4), repeat=n // 2):
        for e in flags:
            yield RotationWord(n, y, e)


def corner_of(w: RotationWord) -> tuple[int, ...]:
    """Image of the corner (1, ..., 1) under the word's isometry."""
    return rotation_word_to_isometry(w).apply_point((1,) * w.dim)


def corner_to_y(c: Sequence[int]) -> RotationWord:
    """The unique even-dimensional word whose cube has all-+-1 corner ``c``."""
    n = len(c)
    if n % 2:
        raise ValueError("corner_to_y is defined for even dimension")
    if any(x not in (1, -1) for x in c):
        raise ValueError(f"corner entries must be +-1, got {list(c)}")
    y = []
    for k in range(n // 2):
        a, b = c[2 * k], c[2 * k + 1]
        # y_k = -(c_{2k} - 1) - (c_{2k-1} c_{2k} - 1) / 2, 1-based
        y.append(-(b - 1) - (a * b - 1) // 2)
    return RotationWord(n, tuple(y))
