"""Boundary quad meshes of 3-dimensional polycubes, written as OFF or OBJ."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .lattice import Polycube, PseudomanifoldError, boundary_components
from .verify import TilingCertificate, placed_cells

Vertex = tuple[int, int, int]


@dataclass(frozen=True)
class MeshSurface:
    vertices: tuple[Vertex, ...]
    faces: tuple[tuple[int, int, int, int], ...]
    scale_den: int = 1

    def directed_edges(self) -> Counter:
        return Counter((f[i], f[(i + 1) % 4]) for f in self.faces for i in range(4))

    def edges(self) -> set[tuple[int, int]]:
        return {(min(a, b), max(a, b)) for a, b in self.directed_edges()}

    def is_closed(self) -> bool:
        """Every edge is used once in each direction."""
        d = self.directed_edges()
        return all(k == 1 and d.get((b, a)) == 1 for (a, b), k in d.items())

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges()) + len(self.faces)

    def to_off(self) -> str:
        lines = ["OFF", f"{len(self.vertices)} {len(self.faces)} {len(self.edges())}"]
        lines += [" ".join(map(str, v)) for v in self.vertices]
        lines += ["4 " + " ".join(map(str, f)) for f in self.faces]
        return "\n".join(lines) + "\n"

    def to_obj(self) -> str:
        lines = [f"# scale 1/{self.scale_den}"]
        lines += ["v " + " ".join(map(str, v)) for v in self.vertices]
        lines += ["f " + " ".join(str(i + 1) for i in f) for f in self.faces]
        return "\n".join(lines) + "\n"


def _quads(cells) -> list[tuple[Vertex, ...]]:
    # Outward normal +e_i uses the cyclic pair (j, k) so e_j x e_k = e_i.
    out = []
    for c in sorted(cells):
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            for sign in (-1, 1):
                nb = list(c)
                nb[i] += sign
                if tuple(nb) in cells:
                    continue
                p = list(c)
                if sign == 1:
                    p[i] += 1
                ej = [0, 0, 0]
                ek = [0, 0, 0]
                ej[j] = ek[k] = 1
                a = tuple(p)
                b = tuple(x + y for x, y in zip(p, ej))
                d = tuple(x + y for x, y in zip(p, ek))
                cc = tuple(x + y + z for x, y, z in zip(p, ej, ek))
                out.append((a, b, cc, d) if sign == 1 else (a, d, cc, b))
    return out


def mesh_from_cells(cells, scale_den: int = 1) -> MeshSurface:
    cells = frozenset(cells)
    quads = _quads(cells)
    index: dict[Vertex, int] = {}
    for v in sorted({v for q in quads for v in q}):
        index[v] = len(index)
    faces = tuple(tuple(index[v] for v in q) for q in quads)
    return MeshSurface(tuple(index), faces, scale_den)


def export_off(P: Polycube) -> MeshSurface:
    """Outward-oriented boundary mesh of a 3-dimensional polycube.

    Raises :class:`PseudomanifoldError` when some boundary edge lies in more
    than two boundary squares, since such a surface has no consistent
    orientation as a closed quad mesh.
    """
    if P.dim != 3:
        raise ValueError(f"mesh export needs dimension 3, got {P.dim}")
    if not P.cells:
        raise ValueError("empty polycube has no boundary")
    boundary_components(P)
    mesh = mesh_from_cells(P.cells, P.scale_den)
    if not mesh.is_closed():
        raise PseudomanifoldError("boundary mesh is not closed")
    return mesh


def export_certificate(cert: TilingCertificate) -> list[MeshSurface]:
    """One mesh per placed copy, all on the certificate's common lattice."""
    if cert.tile.dim != 3:
        raise ValueError(f"mesh export needs dimension 3, got {cert.tile.dim}")
    meshes = []
    for p in cert.placements:
        scale, cells = placed_cells(cert.tile, p)
        meshes.append(export_off(Polycube(3, scale, cells)))
    return meshes
