"""Stacks of cubes and their labeled footprints."""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import Cell, NotAStackError, Polycube


@dataclass(frozen=True)
class LabeledFootprint:
    """An (n-1)-dimensional cell-to-height map describing an n-dimensional stack.

    Cells with height 0 are allowed; they mark holes in the footprint box.
    """

    dim: int
    scale_den: int
    heights: dict[Cell, int] = field(default_factory=dict, hash=False)
    max_height: int = 0

    def __post_init__(self) -> None:
        heights = {tuple(int(x) for x in c): int(h) for c, h in dict(self.heights).items()}
        object.__setattr__(self, "heights", heights)
        if self.max_height == 0 and heights:
            object.__setattr__(self, "max_height", max(heights.values()))
        if self.max_height < 1:
            raise ValueError("max_height must be positive")
        for c, h in heights.items():
            if len(c) != self.dim:
                raise ValueError(f"footprint cell {list(c)} has length {len(c)}, expected {self.dim}")
            if not 0 <= h <= self.max_height:
                raise ValueError(f"height {h} at {list(c)} outside [0, {self.max_height}]")

    def positive(self) -> "LabeledFootprint":
        """Drop zero labels."""
        return LabeledFootprint(self.dim, self.scale_den,
                                {c: h for c, h in self.heights.items() if h > 0}, self.max_height)

    def support(self) -> Polycube:
        """The footprint polycube: cells with a nonzero label."""
        return Polycube(self.dim, self.scale_den,
                        frozenset(c for c, h in self.heights.items() if h > 0))

    def labels(self) -> set[int]:
        return set(self.heights.values())


def stack_from_footprint(F: LabeledFootprint) -> Polycube:
    """Columns of cells from height 0 up to each label, stacked along the last axis."""
    if not any(h > 0 for h in F.heights.values()):
        raise ValueError("footprint has no positive heights")
    cells = frozenset(c + (z,) for c, h in F.heights.items() for z in range(h))
    return Polycube(F.dim + 1, F.scale_den, cells)


def footprint_of(P: Polycube, axis: int | None = None, direction: int = 1,
                 base: int = 0, max_height: int | None = None) -> LabeledFootprint:
    """Read back the labeled footprint of a stack of cubes.

    ``axis`` defaults to the last axis.  With ``direction=+1`` columns grow
    upward from the hyperplane ``x[axis] = base``; with ``direction=-1`` they
    hang downward from it.  Raises :class:`NotAStackError` when some cell has
    no cell directly below it or lies on the wrong side of the base.
    """
    if axis is None:
        axis = P.dim - 1
    if P.dim < 2:
        raise ValueError("a stack needs dimension at least 2")
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    columns: dict[Cell, list[int]] = {}
    for c in P.cells:
        h = c[axis] - base if direction > 0 else base - 1 - c[axis]
        if h < 0:
            raise NotAStackError(f"cell {list(c)} lies below the base x[{axis}]={base}")
        columns.setdefault(c[:axis] + c[axis + 1:], []).append(h)
    heights = {}
    for foot, hs in columns.items():
        hs.sort()
        if hs != list(range(len(hs))):
            missing = next(z for z in range(hs[-1] + 1) if z not in set(hs))
            raise NotAStackError(f"column over {list(foot)} has a gap at height {missing}")
        heights[foot] = len(hs)
    if not heights:
        raise NotAStackError("empty polycube is not a stack")
    top = max(heights.values())
    return LabeledFootprint(P.dim - 1, P.scale_den, heights, max_height or top)
