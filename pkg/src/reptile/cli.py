"""Command-line entry point: ``reptile <command> ...``.

Exit codes: 0 constructed or verified, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import constructions as C
from . import io
from .fixtures import load_rstar_fixture
from .homology import homology
from .lattice import Box, Polycube, random_polycube
from .mesh import export_off
from .verify import (TilingCertificate, expand_self_similar, rep_decompose,
                     self_similar_decomposition, validate_boundary_pattern, verify_tiling)

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _polycube(args) -> Polycube:
    return io.parse_polycube(_read(args.input))


def _two_copy(P: Polycube, g=None) -> TilingCertificate:
    m = P.scale_den
    g = g if g is not None else C.box_half_turn(P.dim, m)
    return C._two_copy_certificate(P, g, Box.cube(P.dim, 4 * m).to_polycube(m))


def _emit_construction(args, P: Polycube, cert: TilingCertificate | None) -> int:
    if args.certificate:
        if cert is None:
            raise InputError(f"construct {args.kind} has no tiling certificate")
        _write(args.out, io.serialize_certificate(cert))
    else:
        _write(args.out, io.serialize_polycube(P))
    return OK


def cmd_construct(args) -> int:
    kind = args.kind
    cert = None
    if kind == "sphere":
        P, cert = C.sphere_reptile(args.n), C.sphere_certificate(args.n)
    elif kind == "wedge":
        first = _polycube(args)
        second = io.parse_polycube(_read(args.with_)) if args.with_ else first
        P = C.wedge_sum(first, second)
        cert = _two_copy(P)
    elif kind == "thicken":
        S = _polycube(args)
        P = C.thicken(S, args.extra)
        g = C.thicken_half_turn(S.dim, args.extra, S.scale_den) if S.dim == 2 else None
        cert = _two_copy(P, g)
    elif kind == "suspend":
        P = C.suspend(_polycube(args), extra_swap=args.extra_swap)
        cert = _two_copy(P)
    elif kind == "footprint":
        base = _polycube(args)
        P, cert = C.footprint_reptile_cube(base) if args.cube else C.footprint_reptile(base)
    elif kind == "rstar":
        if args.input is not None:
            R, balls = io.decomposition_from_dict(io.load_json(_read(args.input)))
        else:
            R, balls = load_rstar_fixture(args.n)
        P, cert = C.assemble_rstar(R, balls)
    elif kind == "notch":
        P = C.notch_non_tiler(_polycube(args))
    elif kind == "random":
        P = random_polycube(args.dim, args.size, random.Random(args.seed))
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown construction {kind}")
    return _emit_construction(args, P, cert)


def cmd_verify(args) -> int:
    text = _read(args.input)
    if args.kind == "tiling":
        report = verify_tiling(io.parse_certificate(text))
        result = report.to_dict()
    elif args.kind == "pattern":
        R, balls = io.decomposition_from_dict(io.load_json(text))
        rep = validate_boundary_pattern(R, balls)
        result = {"pass": rep.ok, "property": rep.property, "face": rep.face, "message": rep.message}
    else:
        cert = io.parse_certificate(text)
        try:
            dec = rep_decompose(cert.tile, cert)
            result = {"pass": True, "placements": len(dec.placements), "ratio": [1, dec.scale_den]}
        except ValueError as e:
            result = {"pass": False, "reason": str(e)}
    _write(args.out, json.dumps(result, sort_keys=True) + "\n")
    return OK if result["pass"] else FAILED


def cmd_homology(args) -> int:
    _write(args.out, io.serialize_homology(homology(_polycube(args))))
    return OK


def cmd_expand(args) -> int:
    cert = io.parse_certificate(_read(args.input))
    if cert.target == cert.tile:
        raise InputError("certificate already tiles the tile itself")
    try:
        dec = self_similar_decomposition(cert)
    except ValueError:
        dec = rep_decompose(cert.tile, cert)
    placements = tuple(expand_self_similar(dec, args.depth))
    out = TilingCertificate(dec.base, dec.base, placements)
    _write(args.out, io.serialize_certificate(out))
    return OK if verify_tiling(out) else FAILED


def cmd_export(args) -> int:
    mesh = export_off(_polycube(args))
    _write(args.out, mesh.to_obj() if args.format == "obj" else mesh.to_off())
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reptile", description="Polycube rep-tiles with exact verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def io_args(p):
        p.add_argument("--in", dest="input", default=None, help="input file (default stdin)")
        p.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("construct", help="build a polycube")
    p.add_argument("kind", choices=["sphere", "wedge", "thicken", "suspend", "footprint",
                                    "rstar", "notch", "random"])
    io_args(p)
    p.add_argument("--n", type=int, default=1, help="sphere dimension, or R* fixture dimension")
    p.add_argument("--with", dest="with_", default=None, help="second wedge summand")
    p.add_argument("--extra", type=int, default=1, help="axes added by thicken")
    p.add_argument("--extra-swap", action="store_true", help="suspend: also swap the second layer")
    p.add_argument("--cube", action="store_true", help="footprint: stretch so two copies tile a cube")
    p.add_argument("--dim", type=int, default=3, help="random: dimension")
    p.add_argument("--size", type=int, default=8, help="random: number of cells")
    p.add_argument("--seed", type=int, default=0, help="random: generator seed")
    p.add_argument("--certificate", action="store_true", help="emit the tiling certificate instead")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a certificate or decomposition")
    p.add_argument("kind", choices=["tiling", "pattern", "reptile"])
    io_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("homology", help="integral homology of a polycube")
    io_args(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("expand", help="iterate the rep-tile substitution")
    io_args(p)
    p.add_argument("--depth", type=int, default=1)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("export", help="boundary mesh of a 3D polycube")
    io_args(p)
    p.add_argument("--format", choices=["off", "obj"], default="off")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, io.ParseError) as e:
        print(f"reptile: {e}", file=sys.stderr)
        return BAD_INPUT
    except C.PatternError as e:
        print(f"reptile: {e}", file=sys.stderr)
        return FAILED
    except C.ConstructionError as e:
        print(f"reptile: {e}", file=sys.stderr)
        return FAILED
    except (ValueError, OverflowError) as e:
        print(f"reptile: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
