"""Exact tiling certificates, boundary-pattern checks and rep-tile decompositions.

Placement convention: a placement with isometry ``iso`` and ratio
``scale_num / scale_den`` sends a point ``x`` of the tile (ambient
coordinates) to ``L(r * x) + trans / (m * scale_den)``, where ``L`` is the
linear part of ``iso``, ``r`` the ratio and ``m`` the tile's own
``scale_den``.  In other words ``iso.trans`` is measured on the lattice whose
spacing is ``1 / (m * scale_den)``; the placed copy's cells live on that
lattice (each tile cell becomes ``scale_num**n`` of them).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import COORD_BOUND, Box, Cell, LatticeIsometry, Polycube, refine
from .rotations import half_turn_last, quarter_turn


@dataclass(frozen=True)
class Placement:
    iso: LatticeIsometry
    scale_num: int = 1
    scale_den: int = 1

    def __post_init__(self) -> None:
        if self.scale_num < 1 or self.scale_den < 1:
            raise ValueError("placement ratio must be positive")
        if math.gcd(self.scale_num, self.scale_den) != 1:
            raise ValueError(f"ratio {self.scale_num}/{self.scale_den} is not in lowest terms")

    @classmethod
    def identity(cls, dim: int) -> "Placement":
        return cls(LatticeIsometry.identity(dim))

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.scale_num, self.scale_den)

    def map_point(self, x: Sequence, tile_scale: int) -> tuple[Fraction, ...]:
        """Image of an ambient-coordinate point under this placement."""
        lin = self.iso.linear([Fraction(v) * self.ratio for v in x])
        unit = Fraction(1, tile_scale * self.scale_den)
        return tuple(a + t * unit for a, t in zip(lin, self.iso.trans))

    def compose(self, inner: "Placement") -> "Placement":
        """``self o inner`` for placements acting on the same tile frame."""
        n1, d1 = inner.scale_num, inner.scale_den
        n2, d2 = self.scale_num, self.scale_den
        lin = self.iso.linear(inner.iso.trans)
        trans = [n2 * a + d1 * t for a, t in zip(lin, self.iso.trans)]
        num, den = n1 * n2, d1 * d2
        g = math.gcd(num, den)
        if any(t % g for t in trans):
            raise ValueError("composite placement does not sit on its own lattice")
        if den // g >= COORD_BOUND:
            raise OverflowError(f"placement scale 1/{den // g} exceeds the integer bound")
        base = self.iso @ inner.iso
        iso = LatticeIsometry(base.perm, base.signs, tuple(t // g for t in trans))
        return Placement(iso, num // g, den // g)


def placed_cells(tile: Polycube, p: Placement) -> tuple[int, frozenset[Cell]]:
    """Cells of a placed copy and the scale denominator of their lattice."""
    if p.iso.dim != tile.dim:
        raise ValueError(f"placement has dimension {p.iso.dim}, tile has {tile.dim}")
    k = p.scale_num
    offsets = list(itertools.product(range(k), repeat=tile.dim)) if k > 1 else [(0,) * tile.dim]
    cells = frozenset(
        p.iso.apply_cell(tuple(k * a + o for a, o in zip(c, off)))
        for c in tile.cells for off in offsets
    )
    return tile.scale_den * p.scale_den, cells


@dataclass(frozen=True)
class TilingCertificate:
    tile: Polycube
    target: Polycube
    placements: tuple[Placement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "placements", tuple(self.placements))

    def copies(self) -> list[Polycube]:
        out = []
        for p in self.placements:
            s, cells = placed_cells(self.tile, p)
            out.append(Polycube(self.tile.dim, s, cells))
        return out


@dataclass(frozen=True)
class TilingReport:
    ok: bool
    reason: str = ""
    witness: Cell | None = None
    scale_den: int = 1

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "pass": self.ok,
            "reason": self.reason,
            "witness": list(self.witness) if self.witness is not None else None,
            "scale_den": self.scale_den,
        }


def verify_tiling(cert: TilingCertificate) -> TilingReport:
    """Check that the placed copies partition the target cell set exactly.

    All geometry is refined to the lcm of the scales involved.  A failed check
    names one witness cell at that scale.
    """
    tile, target = cert.tile, cert.target
    n = tile.dim
    if target.dim != n:
        raise ValueError(f"target has dimension {target.dim}, tile has {n}")
    for p in cert.placements:
        if p.iso.dim != n:
            raise ValueError(f"placement has dimension {p.iso.dim}, tile has {n}")

    # A volume mismatch already decides the answer; the cell scan still runs to find a witness.
    vol = sum((tile.volume() * p.ratio**n for p in cert.placements), Fraction(0))
    prefix = "" if vol == target.volume() else f"volume mismatch: copies {vol}, target {target.volume()}; "

    scales = [target.scale_den] + [tile.scale_den * p.scale_den for p in cert.placements]
    L = math.lcm(*scales)
    if L >= COORD_BOUND:
        raise OverflowError(f"common scale 1/{L} exceeds the integer bound")
    goal = refine(target, L // target.scale_den).cells
    seen: set[Cell] = set()
    for idx, p in enumerate(cert.placements):
        s, cells = placed_cells(tile, p)
        copy = refine(Polycube(n, s, cells), L // s).cells if L != s else cells
        for c in copy:
            if c in seen:
                return TilingReport(False, prefix + f"cell covered twice (copy {idx})", c, L)
            if c not in goal:
                return TilingReport(False, prefix + f"copy {idx} covers a cell outside the target", c, L)
            seen.add(c)
    if len(seen) != len(goal):
        c = min(goal - seen)
        return TilingReport(False, prefix + "target cell left uncovered", c, L)
    return TilingReport(True, "exact partition", None, L)


def search_tilings(tile: Polycube, target: Polycube, limit: int = 1) -> list[TilingCertificate]:
    """Brute-force exact cover of ``target`` by isometric copies of ``tile``.

    Enumerates every signed permutation and translation that fits inside the
    target, then runs a plain Algorithm X search.  Exponential, so it is
    restricted to dimension <= 3 and at most 64 target cells.
    """
    n = tile.dim
    if n > 3 or len(target) > 64:
        raise ValueError("brute-force search is limited to dimension <= 3 and 64 target cells")
    if target.scale_den != tile.scale_den or target.dim != n:
        raise ValueError("tile and target must share dimension and scale")
    goal = target.cells
    options: dict[frozenset, Placement] = {}
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            lin = LatticeIsometry(perm, signs, (0,) * n)
            oriented = [lin.apply_cell(c) for c in tile.cells]
            anchor = oriented[0]
            for x in goal:
                t = tuple(a - b for a, b in zip(x, anchor))
                image = frozenset(tuple(a + b for a, b in zip(o, t)) for o in oriented)
                if image <= goal and image not in options:
                    options[image] = Placement(LatticeIsometry(perm, signs, t))
    by_cell: dict[Cell, list[frozenset]] = {c: [] for c in goal}
    for image in options:
        for c in image:
            by_cell[c].append(image)

    solutions: list[list[frozenset]] = []

    def solve(uncovered: set, chosen: list) -> None:
        if len(solutions) >= limit:
            return
        if not uncovered:
            solutions.append(list(chosen))
            return
        cell = min(uncovered, key=lambda c: (sum(img <= uncovered for img in by_cell[c]), c))
        for img in sorted(by_cell[cell], key=sorted):
            if img <= uncovered:
                chosen.append(img)
                solve(uncovered - img, chosen)
                chosen.pop()

    solve(set(goal), [])
    return [TilingCertificate(tile, target, tuple(options[i] for i in sol)) for sol in solutions]


# -- rep-tile decompositions ----------------------------------------------

@dataclass(frozen=True)
class RepDecomposition:
    base: Polycube
    scale_den: int
    placements: tuple[Placement, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "placements", tuple(self.placements))

    def certificate(self) -> TilingCertificate:
        return TilingCertificate(self.base, self.base, self.placements)


def verify_decomposition(dec: RepDecomposition) -> TilingReport:
    return verify_tiling(dec.certificate())


def _cube_side(P: Polycube) -> int | None:
    box = P.bounding_box()
    sides = set(box.shape)
    if len(sides) != 1 or len(P) != box.num_cells():
        return None
    return sides.pop()


def rep_decompose(P: Polycube, cert: TilingCertificate) -> RepDecomposition:
    """Self-tiling of ``P`` induced by a tiling of a cube by copies of ``P``.

    Each atomic cube of ``P`` receives a shrunken copy of the whole cube
    tiling, so the result has ``len(P) * len(cert.placements)`` placements at
    ratio ``1/s`` where ``s`` is the cube side in lattice units.
    """
    if cert.tile != P:
        raise ValueError("certificate tile differs from the polycube")
    if cert.target.scale_den != P.scale_den:
        raise ValueError("certificate target must be on the tile's lattice")
    if any(p.ratio != 1 for p in cert.placements):
        raise ValueError("cube tiling must use isometric copies")
    report = verify_tiling(cert)
    if not report:
        raise ValueError(f"certificate does not verify: {report.reason}")
    s = _cube_side(cert.target)
    if s is None:
        raise ValueError("certificate target is not a cube")
    lo = cert.target.bounding_box().lo
    out = []
    for c in P.sorted_cells():
        for p in cert.placements:
            t = tuple(tp - l + s * ci for tp, l, ci in zip(p.iso.trans, lo, c))
            out.append(Placement(LatticeIsometry(p.iso.perm, p.iso.signs, t), 1, s))
    dec = RepDecomposition(P, s, tuple(out))
    check = verify_decomposition(dec)
    if not check:
        raise AssertionError(f"induced decomposition failed to verify: {check.reason}")
    return dec


def dilate(P: Polycube, factor: int) -> Polycube:
    """Scale ``P`` by an integer factor about the origin, keeping its lattice."""
    return Polycube(P.dim, P.scale_den, refine(P, factor).cells)


def self_similar_decomposition(cert: TilingCertificate) -> RepDecomposition:
    """Rep decomposition from a tiling of a dilated copy of the tile itself."""
    tile, target = cert.tile, cert.target
    if any(p.ratio != 1 for p in cert.placements):
        raise ValueError("self tiling must use isometric copies")
    ratio = Fraction(len(target), len(tile)) if len(tile) else Fraction(0)
    s = round(float(ratio) ** (1 / tile.dim))
    if s < 2 or s**tile.dim != ratio or dilate(tile, s) != target:
        raise ValueError("target is not an integer dilation of the tile")
    if not verify_tiling(cert):
        raise ValueError("certificate does not verify")
    dec = RepDecomposition(tile, s, tuple(Placement(p.iso, 1, s) for p in cert.placements))
    if not verify_decomposition(dec):
        raise AssertionError("self-similar decomposition failed to verify")
    return dec


def expand_self_similar(dec: RepDecomposition, depth: int) -> list[Placement]:
    """Placements of the depth-fold substitution of ``dec``."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    level = [Placement.identity(dec.base.dim)]
    for _ in range(depth):
        level = [outer.compose(inner) for outer in level for inner in dec.placements]
    return level


# -- boundary patterns ------------------------------------------------------

@dataclass(frozen=True)
class PatternReport:
    ok: bool
    property: str | None = None
    face: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"pass": self.ok, "property": self.property, "face": self.face,
                "message": self.message}


def check_unit_cube_partition(R: Polycube, balls: Sequence[Polycube]) -> None:
    """Raise unless ``R`` and ``balls`` partition the cells of [0,1]^n."""
    n, m = R.dim, R.scale_den
    if len(balls) != n:
        raise ValueError(f"expected {n} balls, got {len(balls)}")
    total = 0
    union: set[Cell] = set()
    for k, piece in enumerate([R, *balls]):
        if piece.dim != n or piece.scale_den != m:
            raise ValueError(f"piece {k} does not share dimension {n} and scale 1/{m}")
        total += len(piece)
        union |= piece.cells
    box = Box.cube(n, m)
    if total != len(union):
        raise ValueError("pieces overlap")
    if len(union) != box.num_cells() or not all(box.contains(c) for c in union):
        raise ValueError("pieces do not fill the unit cube exactly")


def face_trace(P: Polycube, axis: int) -> set[Cell]:
    """Facets of ``P`` on the face x[axis] = 0, as cells of that face."""
    return {c[:axis] + c[axis + 1:] for c in P.cells if c[axis] == 0}


def _moved_trace(P: Polycube, axis: int, g: LatticeIsometry, dest_axis: int) -> set[Cell]:
    out = set()
    for c in P.cells:
        if c[axis] != 0:
            continue
        d = g.apply_cell(c)
        if d[dest_axis] != -1:
            raise ValueError("isometry does not carry the face onto the expected face")
        out.add(d[:dest_axis] + d[dest_axis + 1:])
    return out


def _touch(A: Iterable[Cell], B: set[Cell]) -> Cell | None:
    A = list(A)
    if not A or not B:
        return None
    k = len(A[0])
    offs = list(itertools.product((-1, 0, 1), repeat=k))
    for a in A:
        for o in offs:
            if tuple(x + y for x, y in zip(a, o)) in B:
                return a
    return None


def validate_boundary_pattern(R: Polycube, balls: Sequence[Polycube]) -> PatternReport:
    """Check the boundary pattern the R* assembly relies on.

    Faces are numbered 1..n (F_i lies in x_i = 0).  Disjointness is checked for
    closed sets, so pads that only touch along a corner also fail.
    """
    check_unit_cube_partition(R, balls)
    n = R.dim
    traces = [[face_trace(b, i) for i in range(n)] for b in balls]
    for i in range(n):
        for j in range(n):
            if j != i and traces[j][i]:
                return PatternReport(False, "1", i + 1, f"ball B_{j + 1} meets face F_{i + 1}")
    for k in range(1, n // 2 + 1):
        r = quarter_turn(n, k)
        odd_face, even_face = 2 * k - 2, 2 * k - 1
        moved = _moved_trace(balls[even_face], even_face, r, odd_face)
        hit = _touch(moved, traces[odd_face][odd_face])
        if hit is not None:
            return PatternReport(False, "2", odd_face + 1,
                                 f"r_{k}(B_{2 * k} on F_{2 * k}) meets B_{2 * k - 1} near {list(hit)}")
        moved = _moved_trace(balls[odd_face], odd_face, r.inverse(), even_face)
        hit = _touch(moved, traces[even_face][even_face])
        if hit is not None:
            return PatternReport(False, "3", even_face + 1,
                                 f"r_{k}^-1(B_{2 * k - 1} on F_{2 * k - 1}) meets B_{2 * k} near {list(hit)}")
    if n % 2:
        g = half_turn_last(n) @ quarter_turn(n, n // 2).inverse()
        moved = _moved_trace(balls[n - 1], n - 1, g, n - 1)
        hit = _touch(moved, traces[n - 1][n - 1])
        if hit is not None:
            return PatternReport(False, "odd", n, f"f r^-1(N_{n}) meets N_{n} near {list(hit)}")
    return PatternReport(True, message="boundary pattern holds")
