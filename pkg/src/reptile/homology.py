"""Integral cubical homology of polycubes.

Elementary cubes are stored as ``(corner, mask)``: bit ``i`` of ``mask`` is set
when the cube has unit extent along axis ``i``; otherwise the cube is
degenerate there, sitting at ``corner[i]``.  The boundary of a cube with unit
axes ``a_0 < a_1 < ... < a_{k-1}`` is

    sum_j (-1)**j * ((corner + e_{a_j}, mask - a_j) - (corner, mask - a_j)).

Only ranks and elementary divisors are used, so any consistent sign
convention gives the same homology.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .lattice import Polycube

Face = tuple[tuple[int, ...], int]


@dataclass
class CubicalComplex:
    dim: int
    cubes: list[list[Face]]
    index: list[dict[Face, int]] = field(repr=False)

    def counts(self) -> list[int]:
        return [len(c) for c in self.cubes]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.counts()))

    def boundary_entries(self, k: int) -> dict[tuple[int, int], int]:
        """Sparse entries ``{(row, col): value}`` of the map C_k -> C_{k-1}."""
        entries: dict[tuple[int, int], int] = {}
        if k <= 0 or k > self.dim:
            return entries
        lower = self.index[k - 1]
        for col, (corner, mask) in enumerate(self.cubes[k]):
            sign = 1
            for a in range(self.dim):
                bit = 1 << a
                if not mask & bit:
                    continue
                m2 = mask ^ bit
                up = corner[:a] + (corner[a] + 1,) + corner[a + 1:]
                entries[(lower[(up, m2)], col)] = sign
                entries[(lower[(corner, m2)], col)] = -sign
                sign = -sign
        return entries

    def boundary_matrix(self, k: int) -> sp.csr_matrix:
        rows = len(self.cubes[k - 1]) if k >= 1 else 0
        cols = len(self.cubes[k]) if k <= self.dim else 0
        ent = self.boundary_entries(k)
        if not ent:
            return sp.csr_matrix((rows, cols), dtype=np.int64)
        r, c = zip(*ent.keys())
        return sp.csr_matrix((list(ent.values()), (r, c)), shape=(rows, cols), dtype=np.int64)


def _face_templates(n: int) -> list[tuple[tuple[int, ...], int]]:
    out = []
    for choice in itertools.product((0, 1, 2), repeat=n):
        off = tuple(1 if ch == 2 else 0 for ch in choice)
        mask = sum(1 << i for i, ch in enumerate(choice) if ch == 0)
        out.append((off, mask))
    return out


def build_complex(P: Polycube) -> CubicalComplex:
    if not P.cells:
        raise ValueError("cannot build the complex of an empty polycube")
    n = P.dim
    templates = _face_templates(n)
    cells = np.array(sorted(P.cells), dtype=np.int64)
    offs = np.array([t[0] for t in templates], dtype=np.int64)
    masks = np.array([t[1] for t in templates], dtype=np.int64)
    corners = (cells[:, None, :] + offs[None, :, :]).reshape(-1, n)
    allm = np.broadcast_to(masks[None, :], (len(cells), len(templates))).reshape(-1, 1)
    rows = np.unique(np.hstack([corners, allm]), axis=0)
    popcount = np.array([bin(m).count("1") for m in range(1 << n)])
    dims = popcount[rows[:, -1]]
    cubes: list[list[Face]] = []
    for k in range(n + 1):
        sel = rows[dims == k]
        cubes.append([(tuple(r[:-1]), int(r[-1])) for r in sel.tolist()])
    index = [{f: i for i, f in enumerate(level)} for level in cubes]
    return CubicalComplex(n, cubes, index)


def _diagonal_to_divisors(diag: list[int]) -> list[int]:
    """Elementary divisors of a diagonal matrix with nonzero entries ``diag``."""
    d = sorted(abs(x) for x in diag)
    # Repeatedly replace pairs by (gcd, lcm) until the chain divides.
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = math.gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def _dense_snf_diagonal(rows: list[list[int]]) -> list[int]:
    """Diagonalize a dense integer matrix by unimodular operations.

    Returns the nonzero diagonal entries (not yet normalized into a divisor chain).
    """
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # Minimal nonzero pivot in the remaining block.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    dirty = True
            if not dirty:
                break
            # A remainder survived; move the smallest one into the pivot spot.
            best = None
            for i in range(t, m):
                if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                    best = (abs(A[i][t]), i, t)
            for j in range(t, n):
                if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(A[t][t])
        t += 1
    return diag


def _sparse_snf(entries: dict[tuple[int, int], int]) -> tuple[int, list[int]]:
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = int(v)
            cols.setdefault(c, set()).add(r)

    units = 0
    # Eliminate with +-1 pivots, cheapest columns first.
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda c: len(cols[c])):
            if c not in cols:
                continue
            best = None
            for r in cols[c]:
                if abs(rows[r][c]) == 1 and (best is None or len(rows[r]) < len(rows[best])):
                    best = r
            if best is None:
                continue
            prow = rows.pop(best)
            pv = prow[c]
            for r in list(cols[c]):
                if r == best:
                    continue
                row = rows[r]
                f = row[c] * pv  # pv = +-1, so this is row[c] / pv
                for cc, v in prow.items():
                    nv = row.get(cc, 0) - f * v
                    if nv:
                        if cc not in row:
                            cols[cc].add(r)
                        row[cc] = nv
                    elif cc in row:
                        del row[cc]
                        cols[cc].discard(r)
                if not row:
                    del rows[r]
            for cc in prow:
                cols[cc].discard(best)
                if not cols[cc]:
                    del cols[cc]
            cols.pop(c, None)
            units += 1
            progress = True

    if not rows:
        return units, [1] * units
    rkeys = sorted(rows)
    ckeys = sorted(cols)
    cidx = {c: j for j, c in enumerate(ckeys)}
    dense = [[0] * len(ckeys) for _ in rkeys]
    for i, r in enumerate(rkeys):
        for c, v in rows[r].items():
            dense[i][cidx[c]] = v
    rest = _diagonal_to_divisors(_dense_snf_diagonal(dense))
    return units + len(rest), [1] * units + rest


def smith_normal_form(M) -> tuple[int, tuple[int, ...]]:
    """Rank and elementary divisors ``d1 | d2 | ...`` of an integer matrix.

    ``M`` may be a nested list, a numpy array, a scipy sparse matrix, or a
    ``{(row, col): value}`` dict.  Arithmetic is exact (Python integers).
    """
    if isinstance(M, dict):
        entries = {k: int(v) for k, v in M.items() if v}
    elif sp.issparse(M):
        coo = M.tocoo()
        entries = {}
        for r, c, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            if v:
                entries[(r, c)] = entries.get((r, c), 0) + int(v)
    else:
        arr = [list(r) for r in M]
        entries = {(i, j): int(v) for i, r in enumerate(arr) for j, v in enumerate(r) if v}
    rank, divisors = _sparse_snf(entries)
    return rank, tuple(divisors)


@dataclass(frozen=True)
class HomologyProfile:
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]

    def reduced_betti(self) -> tuple[int, ...]:
        b = list(self.betti)
        if b and b[0] > 0:
            b[0] -= 1
        return tuple(b)

    def has_torsion(self) -> bool:
        return any(self.torsion)


class ComplexError(RuntimeError):
    """An internal consistency check on a cubical complex failed."""


def homology(P: Polycube, check: bool = True) -> HomologyProfile:
    """Betti numbers and torsion of the cubical complex of ``P``.

    With ``check`` the boundary maps are verified to compose to zero and the
    alternating Betti sum is compared with the Euler characteristic.
    """
    K = build_complex(P)
    n = K.dim
    counts = K.counts()
    ranks = [0] * (n + 2)
    divisors: list[list[int]] = [[] for _ in range(n + 2)]
    mats = {}
    for k in range(1, n + 1):
        ent = K.boundary_entries(k)
        if check:
            mats[k] = K.boundary_matrix(k)
        ranks[k], divisors[k] = smith_normal_form(ent)
    if check:
        for k in range(2, n + 1):
            if (mats[k - 1] @ mats[k]).count_nonzero():
                raise ComplexError(f"boundary maps in degrees {k - 1},{k} do not compose to zero")
    betti = tuple(counts[k] - ranks[k] - ranks[k + 1] for k in range(n + 1))
    torsion = tuple(tuple(d for d in divisors[k + 1] if d > 1) for k in range(n + 1))
    if check and sum((-1) ** k * b for k, b in enumerate(betti)) != K.euler_characteristic():
        raise ComplexError("Betti numbers disagree with the Euler characteristic")
    return HomologyProfile(betti, torsion)
