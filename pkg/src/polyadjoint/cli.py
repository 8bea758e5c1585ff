"""Command-line front end.

Exit codes: 0 success or all checks passed, 1 a verification failed,
2 malformed input or unknown names.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import batteries
from . import theorems as th
from .algebra import DimensionError, Q, UnsupportedPolyhedronError, qvec
from .canonical import (
    ConsistencyError,
    adjoint_and_drop,
    drop,
    facet_restriction,
    omega,
    omega0,
    omega_s,
)
from .families import UnknownFamilyError, generate_family
from .io import PolytopeFileError, load_polytope, polytope_to_document
from .polytope import RepresentationError, SizeError, orthoscheme_decomposition

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

VERBS = ("adjoint", "omega", "omega0", "omega-s", "drop", "classify", "residue", "decompose", "verify", "gen")


class InputError(ValueError):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyadjoint", description="Exact adjoints, canonical forms and drop laws of polytopes.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("target", nargs="?", help="polytope JSON path or family name; for verify, a law id or 'all'")
    p.add_argument("input", nargs="?", help="for verify: optional polytope path or family to check instead of random instances")
    p.add_argument("--family", help="family name (cube, crosspolytope, simplex, pyramid, prism, zonotope, orthoscheme, 24cell, random)")
    p.add_argument("--d", type=int, default=None, help="dimension")
    p.add_argument("--s", type=int, default=None, help="Taylor order for omega-s")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--facet", type=int, default=0, help="facet index for residue")
    p.add_argument("--point", help="comma-separated rationals, e.g. 1/3,1/5 (decompose)")
    p.add_argument("--representation", choices=("vertices", "facets"), default="vertices", help="output representation for gen")
    p.add_argument("--out", help="write the JSON report (JSON lines for verify) here")
    return p


def resolve_polytope(name: Optional[str], family: Optional[str], d: Optional[int], seed: int):
    if family:
        return generate_family(family, d or 3, seed), family
    if not name:
        raise InputError("no input polytope: give a path or --family")
    if Path(name).exists():
        return load_polytope(name), name
    if name.endswith(".json"):
        raise InputError(f"no such file: {name}")
    return generate_family(name, d or 3, seed), name


def _point(text: str, d: int) -> tuple:
    try:
        x = qvec(c for c in text.split(","))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad point {text!r}: {exc}")
    if len(x) != d:
        raise InputError(f"point has {len(x)} coordinates, expected {d}")
    return x


def _require_full(P):
    if not P.full_dim:
        raise InputError("polytope is not full-dimensional; restrict it to its affine span first")


def compute(args) -> dict:
    P, label = resolve_polytope(args.target, args.family, args.d, args.seed)
    meta = {"input": label, "d": P.dim, "seed": args.seed}
    if args.verb == "gen":
        return polytope_to_document(P, args.representation)
    _require_full(P)
    meta["m"] = P.m
    if args.verb == "adjoint":
        return {**meta, **adjoint_and_drop(P).to_json()}
    if args.verb == "omega":
        return {**meta, **omega(P).to_json(), "drop": drop(P)}
    if args.verb == "omega0":
        return {**meta, "omega0": omega0(P).to_json(), "drop": drop(P)}
    if args.verb == "omega-s":
        if args.s is None or args.s < 0:
            raise InputError("omega-s needs --s >= 0")
        return {**meta, "s": args.s, "omegaS": omega_s(P, args.s).to_json(), "drop": drop(P)}
    if args.verb == "drop":
        return {"drop": drop(P)}
    if args.verb == "classify":
        return th.classify_polytope(P).to_json()
    if args.verb == "residue":
        if not 0 <= args.facet < P.m:
            raise InputError(f"facet index {args.facet} out of range 0..{P.m - 1}")
        r = facet_restriction(P, args.facet)
        return {
            **meta,
            "facet": r.facet,
            "eliminated": r.eliminated,
            "normSq": str(r.norm_sq),
            "scalePending": r.scale_pending,
            "residue": r.form.to_json(),
        }
    if args.verb == "decompose":
        x = _point(args.point, P.dim) if args.point else P.centroid()
        cells = orthoscheme_decomposition(P, x)
        return {
            **meta,
            "point": [str(c) for c in x],
            "cells": [{"sign": c.sign, "vertices": [[str(a) for a in v] for v in c.vertices]} for c in cells],
        }
    raise InputError(f"unknown verb {args.verb}")


def _verify_input(law: str, P, mode: str):
    """Run one law on a user-supplied polytope where that makes sense."""
    single = {
        "edge-identity": lambda: th.verify_edge_identity(P, mode="float" if mode == "float" else "auto"),
        "classification": lambda: th.check_classification(P),
        "zonotope-characterization": lambda: th.check_zonotope_characterization(P),
        "omega-s-vanishing": lambda: th.check_vanishing_pattern(P),
        "omega0-parity": lambda: th.check_parity(P),
        "homogenized-omega": lambda: th.check_homogenized_omega(P),
        "drop-maxdrop": lambda: th.check_drop_law("maxdrop", P),
        "drop-parity": lambda: th.check_drop_law("parity", P),
        "dual-volume": lambda: th.check_dual_volume(P, P.centroid()),
        "translation-laws": lambda: th.verify_translation_laws(P, min(2, P.dim), [tuple(Q(1) for _ in range(P.dim))]),
    }
    if law not in single:
        raise InputError(f"law {law!r} runs on random instances only; known single-polytope laws: {', '.join(sorted(single))}")
    return [single[law]()]


def verify(args) -> tuple:
    law = args.target
    if not law:
        raise InputError("verify needs a law id or 'all'")
    if args.input or args.family:
        P, label = resolve_polytope(args.input, args.family, args.d, args.seed)
        _require_full(P)
        reports = _verify_input(law, P, args.mode)
        for r in reports:
            r.instance = f"{label}: {r.instance}"
            r.seed = args.seed
        return reports
    laws = sorted(batteries.LAWS) if law == "all" else [law]
    reports = []
    for name in laws:
        if name not in batteries.LAWS:
            raise InputError(f"unknown law {name!r}; known: {', '.join(sorted(batteries.LAWS))}")
        d = args.d
        if law == "all" and (d is None or d not in batteries.LAWS[name].dims):
            d = batteries.LAWS[name].default_d
        if d is not None and d not in batteries.LAWS[name].dims:
            raise InputError(f"law {name!r} supports d in {batteries.LAWS[name].dims}")
        reports.extend(batteries.run_battery(name, args.count, args.seed, d, args.mode))
    return reports


def format_table(rows) -> str:
    header = ("law", "instances", "passes", "skipped", "mode")
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(5)]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(header, widths))]
    lines += ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.verb == "verify":
            reports = verify(args)
            lines = [json.dumps(r.to_json()) for r in reports]
            if args.out:
                Path(args.out).write_text("\n".join(lines) + "\n")
            else:
                print("\n".join(lines))
            print(format_table(batteries.summarize(reports)))
            return EXIT_FAIL if any(r.passed is False for r in reports) else EXIT_OK
        report = compute(args)
    except (InputError, PolytopeFileError, UnknownFamilyError, batteries.UnknownLawError,
            RepresentationError, SizeError, DimensionError, UnsupportedPolyhedronError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except ConsistencyError as exc:
        print(json.dumps({"error": "consistency", "witness": str(exc)}))
        return EXIT_FAIL
    text = json.dumps(report)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
