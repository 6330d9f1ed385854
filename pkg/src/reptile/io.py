"""JSON serialization for polycubes, footprints, certificates and homology profiles.

Cells are written in lexicographic order so output is byte-stable.
"""

from __future__ import annotations

import json
from typing import Any

from .homology import HomologyProfile
from .lattice import LatticeIsometry, Polycube
from .stacks import LabeledFootprint
from .verify import Placement, TilingCertificate


class ParseError(ValueError):
    """Malformed input; the message names the offending position."""


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _int_list(value: Any, where: str, length: int | None = None) -> list[int]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list, got {type(value).__name__}")
    out = [_int(v, f"{where}[{i}]") for i, v in enumerate(value)]
    if length is not None and len(out) != length:
        raise ParseError(f"{where}: expected {length} entries, got {len(out)}")
    return out


def _field(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in obj:
        raise ParseError(f"{where}: missing field {key!r}")
    return obj[key]


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno} column {e.colno}: {e.msg}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


# -- polycube --------------------------------------------------------------------

def polycube_to_dict(P: Polycube) -> dict:
    return {"dim": P.dim, "scale_den": P.scale_den, "cells": [list(c) for c in P.sorted_cells()]}


def polycube_from_dict(d: Any, where: str = "polycube") -> Polycube:
    dim = _int(_field(d, "dim", where), f"{where}.dim")
    scale = _int(_field(d, "scale_den", where), f"{where}.scale_den")
    if dim < 1:
        raise ParseError(f"{where}.dim: must be positive")
    if scale < 1:
        raise ParseError(f"{where}.scale_den: must be positive")
    raw = _field(d, "cells", where)
    if not isinstance(raw, list):
        raise ParseError(f"{where}.cells: expected a list")
    cells = set()
    for i, c in enumerate(raw):
        cell = tuple(_int_list(c, f"{where}.cells[{i}]", dim))
        if cell in cells:
            raise ParseError(f"{where}.cells[{i}]: duplicate cell {list(cell)}")
        cells.add(cell)
    return Polycube(dim, scale, frozenset(cells))


def serialize_polycube(P: Polycube) -> str:
    return dumps(polycube_to_dict(P))


def parse_polycube(text: str) -> Polycube:
    return polycube_from_dict(_loads(text))


# -- footprint -------------------------------------------------------------------

def footprint_to_dict(F: LabeledFootprint) -> dict:
    return {
        "dim": F.dim, "scale_den": F.scale_den, "max_height": F.max_height,
        "heights": [{"cell": list(c), "h": F.heights[c]} for c in sorted(F.heights)],
    }


def footprint_from_dict(d: Any, where: str = "footprint") -> LabeledFootprint:
    dim = _int(_field(d, "dim", where), f"{where}.dim")
    scale = _int(_field(d, "scale_den", where), f"{where}.scale_den")
    top = _int(_field(d, "max_height", where), f"{where}.max_height")
    raw = _field(d, "heights", where)
    if not isinstance(raw, list):
        raise ParseError(f"{where}.heights: expected a list")
    heights = {}
    for i, entry in enumerate(raw):
        w = f"{where}.heights[{i}]"
        cell = tuple(_int_list(_field(entry, "cell", w), f"{w}.cell", dim))
        if cell in heights:
            raise ParseError(f"{w}: duplicate cell {list(cell)}")
        heights[cell] = _int(_field(entry, "h", w), f"{w}.h")
    try:
        return LabeledFootprint(dim, scale, heights, top)
    except ValueError as e:
        raise ParseError(f"{where}: {e}") from None


def serialize_footprint(F: LabeledFootprint) -> str:
    return dumps(footprint_to_dict(F))


def parse_footprint(text: str) -> LabeledFootprint:
    return footprint_from_dict(_loads(text))


# -- certificates --------------------------------------------------------------------

def placement_to_dict(p: Placement) -> dict:
    return {"perm": list(p.iso.perm), "signs": list(p.iso.signs), "trans": list(p.iso.trans),
            "scale": [p.scale_num, p.scale_den]}


def placement_from_dict(d: Any, dim: int, where: str) -> Placement:
    perm = _int_list(_field(d, "perm", where), f"{where}.perm", dim)
    signs = _int_list(_field(d, "signs", where), f"{where}.signs", dim)
    trans = _int_list(_field(d, "trans", where), f"{where}.trans", dim)
    scale = _int_list(d.get("scale", [1, 1]), f"{where}.scale", 2)
    try:
        return Placement(LatticeIsometry(tuple(perm), tuple(signs), tuple(trans)), *scale)
    except ValueError as e:
        raise ParseError(f"{where}: {e}") from None


def certificate_to_dict(cert: TilingCertificate) -> dict:
    return {
        "tile": polycube_to_dict(cert.tile),
        "target": polycube_to_dict(cert.target),
        "placements": [placement_to_dict(p) for p in cert.placements],
    }


def certificate_from_dict(d: Any, where: str = "certificate") -> TilingCertificate:
    tile = polycube_from_dict(_field(d, "tile", where), f"{where}.tile")
    target = polycube_from_dict(_field(d, "target", where), f"{where}.target")
    if target.dim != tile.dim:
        raise ParseError(f"{where}.target: dimension {target.dim} differs from tile dimension {tile.dim}")
    raw = _field(d, "placements", where)
    if not isinstance(raw, list):
        raise ParseError(f"{where}.placements: expected a list")
    placements = tuple(placement_from_dict(p, tile.dim, f"{where}.placements[{i}]")
                       for i, p in enumerate(raw))
    return TilingCertificate(tile, target, placements)


def serialize_certificate(cert: TilingCertificate) -> str:
    return dumps(certificate_to_dict(cert))


def parse_certificate(text: str) -> TilingCertificate:
    return certificate_from_dict(_loads(text))


# -- homology -----------------------------------------------------------------------

def homology_to_dict(h: HomologyProfile) -> dict:
    return {"betti": list(h.betti), "torsion": [list(t) for t in h.torsion]}


def homology_from_dict(d: Any, where: str = "homology") -> HomologyProfile:
    betti = _int_list(_field(d, "betti", where), f"{where}.betti")
    raw = _field(d, "torsion", where)
    if not isinstance(raw, list) or len(raw) != len(betti):
        raise ParseError(f"{where}.torsion: expected one list per degree")
    torsion = tuple(tuple(_int_list(t, f"{where}.torsion[{i}]")) for i, t in enumerate(raw))
    return HomologyProfile(tuple(betti), torsion)


def serialize_homology(h: HomologyProfile) -> str:
    return dumps(homology_to_dict(h))


def parse_homology(text: str) -> HomologyProfile:
    return homology_from_dict(_loads(text))


# -- ball decompositions ----------------------------------------------------------------

def decomposition_to_dict(R: Polycube, balls) -> dict:
    return {"R": polycube_to_dict(R), "balls": [polycube_to_dict(b) for b in balls]}


def decomposition_from_dict(d: Any, where: str = "decomposition") -> tuple[Polycube, list[Polycube]]:
    R = polycube_from_dict(_field(d, "R", where), f"{where}.R")
    raw = _field(d, "balls", where)
    if not isinstance(raw, list):
        raise ParseError(f"{where}.balls: expected a list")
    balls = [polycube_from_dict(b, f"{where}.balls[{i}]") for i, b in enumerate(raw)]
    return R, balls


def load_json(text: str) -> Any:
    return _loads(text)
