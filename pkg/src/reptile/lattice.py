"""Exact integer-lattice geometry: cells, polycubes, boxes and lattice isometries.

A cell is identified by the minimal corner of its unit cube in lattice units.
A polycube at ``scale_den = m`` has cells of side ``1/m`` in ambient
coordinates, so the cell ``c`` occupies ``[c/m, (c+1)/m]``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Cell = tuple[int, ...]

# Coordinates stay well inside signed 64-bit range.
COORD_BOUND = 2**62


class NotAStackError(ValueError):
    """Raised when a polycube is not a stack of cubes in the requested direction."""


class PseudomanifoldError(ValueError):
    """Raised when a boundary ridge does not lie in exactly two boundary facets."""


def _check_bound(values: Iterable[int]) -> None:
    for v in values:
        if not -COORD_BOUND < v < COORD_BOUND:
            raise OverflowError(f"lattice coordinate {v} exceeds the bound 2**62")


@dataclass(frozen=True)
class Polycube:
    dim: int
    scale_den: int
    cells: frozenset[Cell] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dimension must be positive, got {self.dim}")
        if self.scale_den < 1:
            raise ValueError(f"scale_den must be positive, got {self.scale_den}")
        if not isinstance(self.cells, frozenset):
            object.__setattr__(self, "cells", frozenset(tuple(c) for c in self.cells))
        for c in self.cells:
            if len(c) != self.dim:
                raise ValueError(f"cell {list(c)} has length {len(c)}, expected {self.dim}")
        if self.cells:
            lo, hi = self._extent()
            _check_bound(lo + hi)

    @classmethod
    def from_cells(cls, cells: Iterable[Sequence[int]], dim: int | None = None,
                   scale_den: int = 1) -> "Polycube":
        cells = frozenset(tuple(int(x) for x in c) for c in cells)
        if dim is None:
            if not cells:
                raise ValueError("cannot infer the dimension of an empty cell set")
            dim = len(next(iter(cells)))
        return cls(dim, scale_den, cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    def sorted_cells(self) -> list[Cell]:
        return sorted(self.cells)

    def _extent(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        lo = tuple(min(c[i] for c in self.cells) for i in range(self.dim))
        hi = tuple(max(c[i] for c in self.cells) + 1 for i in range(self.dim))
        return lo, hi

    def bounding_box(self) -> "Box":
        if not self.cells:
            raise ValueError("empty polycube has no bounding box")
        lo, hi = self._extent()
        return Box(lo, hi)

    def volume(self) -> Fraction:
        """Volume in ambient units, ``len(cells) / scale_den**dim``."""
        return Fraction(len(self.cells), self.scale_den**self.dim)

    def translate(self, offset: Sequence[int]) -> "Polycube":
        if len(offset) != self.dim:
            raise ValueError("offset length does not match dimension")
        return Polycube(self.dim, self.scale_den,
                        frozenset(tuple(a + b for a, b in zip(c, offset)) for c in self.cells))

    def normalized(self) -> "Polycube":
        """Translate so the bounding box starts at the origin."""
        lo, _ = self._extent()
        return self.translate([-x for x in lo])

    def with_cells(self, cells: Iterable[Cell]) -> "Polycube":
        return Polycube(self.dim, self.scale_den, frozenset(cells))

    def at_scale(self, scale_den: int) -> "Polycube":
        """Refine to a multiple of the current scale."""
        if scale_den % self.scale_den:
            raise ValueError(f"scale {scale_den} is not a multiple of {self.scale_den}")
        return refine(self, scale_den // self.scale_den)


@dataclass(frozen=True)
class Box:
    lo: tuple[int, ...]
    hi: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", tuple(self.lo))
        object.__setattr__(self, "hi", tuple(self.hi))
        if len(self.lo) != len(self.hi):
            raise ValueError("box corners have different lengths")
        if any(a >= b for a, b in zip(self.lo, self.hi)):
            raise ValueError(f"box needs lo < hi componentwise, got {self.lo}, {self.hi}")

    @classmethod
    def cube(cls, dim: int, side: int, lo: int = 0) -> "Box":
        return cls((lo,) * dim, (lo + side,) * dim)

    @property
    def dim(self) -> int:
        return len(self.lo)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.lo, self.hi))

    def num_cells(self) -> int:
        n = 1
        for s in self.shape:
            n *= s
        return n

    def cells(self) -> Iterator[Cell]:
        return itertools.product(*(range(a, b) for a, b in zip(self.lo, self.hi)))

    def contains(self, cell: Sequence[int]) -> bool:
        return all(a <= x < b for a, x, b in zip(self.lo, cell, self.hi))

    def to_polycube(self, scale_den: int = 1) -> Polycube:
        return Polycube(self.dim, scale_den, frozenset(self.cells()))


@dataclass(frozen=True)
class LatticeIsometry:
    """Signed axis permutation followed by an integer translation.

    Axis ``i`` of the input is sent to axis ``perm[i]`` with sign ``signs[i]``:
    ``y[perm[i]] = signs[i] * x[i]``, then ``trans`` (indexed by output axis)
    is added.
    """

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    trans: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        object.__setattr__(self, "trans", tuple(int(t) for t in self.trans))
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"perm {list(self.perm)} is not a permutation of 0..{n - 1}")
        if len(self.signs) != n or len(self.trans) != n:
            raise ValueError("perm, signs and trans must have equal length")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +-1, got {list(self.signs)}")
        _check_bound(self.trans)

    @classmethod
    def identity(cls, dim: int) -> "LatticeIsometry":
        return cls(tuple(range(dim)), (1,) * dim, (0,) * dim)

    @classmethod
    def translation(cls, offset: Sequence[int]) -> "LatticeIsometry":
        n = len(offset)
        return cls(tuple(range(n)), (1,) * n, tuple(offset))

    @property
    def dim(self) -> int:
        return len(self.perm)

    def is_identity(self) -> bool:
        return self == LatticeIsometry.identity(self.dim)

    def linear(self, x: Sequence) -> list:
        y = [0] * self.dim
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            y[p] = s * x[i]
        return y

    def apply_point(self, x: Sequence) -> tuple:
        """Image of a point; works for ints and Fractions alike."""
        y = self.linear(x)
        return tuple(a + t for a, t in zip(y, self.trans))

    def apply_cell(self, cell: Sequence[int]) -> Cell:
        y = self.apply_point(cell)
        # A negated axis maps the cell's span [c, c+1] onto [-c-1, -c] + t.
        out = list(y)
        for p, s in zip(self.perm, self.signs):
            if s < 0:
                out[p] -= 1
        return tuple(out)

    def __call__(self, P: Polycube) -> Polycube:
        return apply_isometry(self, P)

    def compose(self, other: "LatticeIsometry") -> "LatticeIsometry":
        """Return ``self o other`` (apply ``other`` first)."""
        if other.dim != self.dim:
            raise ValueError("cannot compose isometries of different dimension")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.dim))
        signs = tuple(self.signs[other.perm[i]] * other.signs[i] for i in range(self.dim))
        trans = self.apply_point(other.trans)
        return LatticeIsometry(perm, signs, trans)

    def __matmul__(self, other: "LatticeIsometry") -> "LatticeIsometry":
        return self.compose(other)

    def inverse(self) -> "LatticeIsometry":
        n = self.dim
        perm = [0] * n
        signs = [0] * n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        lin = LatticeIsometry(tuple(perm), tuple(signs), (0,) * n)
        trans = tuple(-v for v in lin.linear(self.trans))
        return LatticeIsometry(tuple(perm), tuple(signs), trans)

    def power(self, k: int) -> "LatticeIsometry":
        g = self if k >= 0 else self.inverse()
        out = LatticeIsometry.identity(self.dim)
        for _ in range(abs(k)):
            out = g @ out
        return out

    def scaled(self, factor: int) -> "LatticeIsometry":
        """The same geometric map expressed on a lattice refined by ``factor``."""
        return LatticeIsometry(self.perm, self.signs, tuple(t * factor for t in self.trans))

    def matrix(self) -> list[list[int]]:
        n = self.dim
        m = [[0] * n for _ in range(n)]
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            m[p][i] = s
        return m

    def extend(self, before: int = 0, after: int = 0) -> "LatticeIsometry":
        """Act as the identity on ``before`` new leading and ``after`` trailing axes."""
        perm = tuple(range(before)) + tuple(p + before for p in self.perm) + tuple(
            range(before + self.dim, before + self.dim + after))
        signs = (1,) * before + self.signs + (1,) * after
        trans = (0,) * before + self.trans + (0,) * after
        return LatticeIsometry(perm, signs, trans)


def apply_isometry(g: LatticeIsometry, P: Polycube) -> Polycube:
    if g.dim != P.dim:
        raise ValueError(f"isometry has dimension {g.dim}, polycube has {P.dim}")
    return Polycube(P.dim, P.scale_den, frozenset(g.apply_cell(c) for c in P.cells))


def refine(P: Polycube, factor: int) -> Polycube:
    if factor < 1:
        raise ValueError(f"refinement factor must be >= 1, got {factor}")
    if factor == 1:
        return P
    offsets = list(itertools.product(range(factor), repeat=P.dim))
    cells = frozenset(
        tuple(factor * a + o for a, o in zip(c, off))
        for c in P.cells for off in offsets
    )
    return Polycube(P.dim, P.scale_den * factor, cells)


def complement_in_box(P: Polycube, B: Box) -> Polycube:
    if B.dim != P.dim:
        raise ValueError("box and polycube dimensions differ")
    for c in P.cells:
        if not B.contains(c):
            raise ValueError(f"cell {list(c)} lies outside the box {B.lo}..{B.hi}")
    return Polycube(P.dim, P.scale_den, frozenset(c for c in B.cells() if c not in P.cells))


def facet_neighbors(cell: Cell) -> Iterator[Cell]:
    for i in range(len(cell)):
        for d in (-1, 1):
            yield cell[:i] + (cell[i] + d,) + cell[i + 1:]


def connected_components(P: Polycube) -> list[Polycube]:
    """Facet-connected components, ordered by their smallest cell."""
    remaining = set(P.cells)
    comps = []
    for start in sorted(P.cells):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = {start}
        queue = deque([start])
        while queue:
            c = queue.popleft()
            for nb in facet_neighbors(c):
                if nb in remaining:
                    remaining.discard(nb)
                    comp.add(nb)
                    queue.append(nb)
        comps.append(P.with_cells(comp))
    return comps


def is_connected(P: Polycube) -> bool:
    return len(connected_components(P)) == 1


# A facet is (axis, point): it lies in the hyperplane x[axis] = point[axis] and
# spans [point[j], point[j] + 1] along every other axis.
Facet = tuple[int, Cell]


def boundary_facets(P: Polycube) -> list[Facet]:
    out = []
    for c in P.cells:
        for i in range(P.dim):
            lower = c[:i] + (c[i] - 1,) + c[i + 1:]
            upper = c[:i] + (c[i] + 1,) + c[i + 1:]
            if lower not in P.cells:
                out.append((i, c))
            if upper not in P.cells:
                out.append((i, upper))
    return out


def _facet_ridges(facet: Facet) -> Iterator[tuple[tuple[int, int], Cell]]:
    axis, p = facet
    for j in range(len(p)):
        if j == axis:
            continue
        key = (min(axis, j), max(axis, j))
        yield key, p
        yield key, p[:j] + (p[j] + 1,) + p[j + 1:]


def boundary_components(P: Polycube) -> int:
    """Number of connected components of the boundary of ``P``.

    Boundary facets are glued along shared (n-2)-faces.  Every such ridge must
    lie in exactly two boundary facets, otherwise the boundary is not a closed
    pseudomanifold and :class:`PseudomanifoldError` is raised.
    """
    if not P.cells:
        raise ValueError("empty polycube has no boundary")
    facets = boundary_facets(P)
    if P.dim == 1:
        return len(facets)
    index = {f: k for k, f in enumerate(facets)}
    parent = list(range(len(facets)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    ridges: dict = {}
    for f in facets:
        for r in _facet_ridges(f):
            ridges.setdefault(r, []).append(index[f])
    for r, members in ridges.items():
        if len(members) != 2:
            raise PseudomanifoldError(
                f"ridge {r} lies in {len(members)} boundary facets; boundary is not a pseudomanifold")
        a, b = find(members[0]), find(members[1])
        if a != b:
            parent[a] = b
    return len({find(k) for k in range(len(facets))})


def neighbor_count(P: Polycube, cell: Cell) -> int:
    return sum(nb in P.cells for nb in facet_neighbors(cell))


def has_peninsula(P: Polycube) -> bool:
    return any(neighbor_count(P, c) == 1 for c in P.cells)


def random_polycube(dim: int, size: int, rng) -> Polycube:
    """Grow a facet-connected polycube of ``size`` cells from the origin.

    ``rng`` is a :class:`random.Random`.
    """
    cells = {(0,) * dim}
    frontier = sorted(set(facet_neighbors((0,) * dim)))
    while len(cells) < size:
        nxt = frontier[rng.randrange(len(frontier))]
        cells.add(nxt)
        frontier = sorted({nb for c in cells for nb in facet_neighbors(c)} - cells)
    return Polycube.from_cells(cells, dim).normalized()
