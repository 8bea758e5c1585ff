"""Polytope JSON files with string rationals as the only numeric format.

Accepted documents::

    {"dim": d, "vertices": [["p/q", ...], ...]}
    {"dim": d, "facets": [{"u": [...], "h": "p/q"}, ...]}   # <u, x> <= h
    {"zonotope": [[...], ...]}
    {"orthoscheme": ["l1", ..., "ld"]}
"""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any, Optional

from .algebra import LinearForm, Q, qstr
from .polytope import MAX_DIM, Polytope, RepresentationError, SizeError, from_inequalities, from_points

MAX_ITEMS = 40


class PolytopeFileError(ValueError):
    """Parse or validation failure, with the source line when it is known."""

    def __init__(self, message: str, line: Optional[int] = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


def _line_of(text: str, token: str) -> Optional[int]:
    if not text:
        return None
    m = re.search(re.escape(json.dumps(token) if isinstance(token, str) else str(token)), text)
    if m is None:
        return None
    return text.count("\n", 0, m.start()) + 1


def _rational(value: Any, where: str, text: str, source: str):
    if not isinstance(value, (str, int)) or isinstance(value, bool):
        raise PolytopeFileError(f"{where}: expected a rational string, got {value!r}", _line_of(text, value), source)
    try:
        return Q(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise PolytopeFileError(f"{where}: malformed rational {value!r} ({exc})", _line_of(text, value), source)


def _vector(value: Any, where: str, text: str, source: str, dim: Optional[int] = None) -> tuple:
    if not isinstance(value, list):
        raise PolytopeFileError(f"{where}: expected a list", None, source)
    vec = tuple(_rational(c, f"{where}[{i}]", text, source) for i, c in enumerate(value))
    if dim is not None and len(vec) != dim:
        raise PolytopeFileError(f"{where}: expected {dim} coordinates, got {len(vec)}", None, source)
    return vec


def polytope_from_document(doc: Any, text: str = "", source: str = "<input>") -> Polytope:
    """Build and validate a Polytope from a decoded JSON document."""
    if not isinstance(doc, dict):
        raise PolytopeFileError("top level must be an object", 1, source)
    try:
        if "zonotope" in doc:
            from .families import zonotope

            gens = [_vector(g, f"zonotope[{i}]", text, source) for i, g in enumerate(doc["zonotope"])]
            if not gens or len({len(g) for g in gens}) != 1:
                raise PolytopeFileError("zonotope generators must be nonempty and of one length", None, source)
            _check_dim(len(gens[0]), source)
            return zonotope(gens)
        if "orthoscheme" in doc:
            from .families import orthoscheme

            ells = _vector(doc["orthoscheme"], "orthoscheme", text, source)
            if any(a <= 0 for a in ells):
                raise PolytopeFileError("orthoscheme lengths must be positive", None, source)
            _check_dim(len(ells), source)
            return orthoscheme(ells)
        dim = doc.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise PolytopeFileError(f"'dim' must be a positive integer, got {dim!r}", _line_of(text, "dim"), source)
        _check_dim(dim, source)
        if "vertices" in doc:
            pts = [_vector(v, f"vertices[{i}]", text, source, dim) for i, v in enumerate(doc["vertices"])]
            if not pts:
                raise PolytopeFileError("no vertices", _line_of(text, "vertices"), source)
            if len(pts) > MAX_ITEMS:
                raise PolytopeFileError(f"{len(pts)} vertices exceed the limit {MAX_ITEMS}", None, source)
            return from_points(pts)
        if "facets" in doc:
            forms = []
            for i, f in enumerate(doc["facets"]):
                if not isinstance(f, dict) or "u" not in f or "h" not in f:
                    raise PolytopeFileError(f"facets[{i}]: expected {{'u': [...], 'h': ...}}", None, source)
                u = _vector(f["u"], f"facets[{i}].u", text, source, dim)
                h = _rational(f["h"], f"facets[{i}].h", text, source)
                forms.append(LinearForm(h, u))
            if len(forms) > MAX_ITEMS:
                raise PolytopeFileError(f"{len(forms)} facets exceed the limit {MAX_ITEMS}", None, source)
            return from_inequalities(dim, forms)
        raise PolytopeFileError("expected 'vertices', 'facets', 'zonotope' or 'orthoscheme'", 1, source)
    except (RepresentationError, SizeError) as exc:
        raise PolytopeFileError(str(exc), None, source) from exc


def _check_dim(dim: int, source: str):
    if dim > MAX_DIM:
        raise PolytopeFileError(f"dimension {dim} exceeds the limit {MAX_DIM}", None, source)


def loads(text: str, source: str = "<input>") -> Polytope:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolytopeFileError(exc.msg, exc.lineno, source) from exc
    return polytope_from_document(doc, text, source)


def load_polytope(path) -> Polytope:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise PolytopeFileError(str(exc), None, str(path)) from exc
    return loads(text, str(path))


def polytope_to_document(P: Polytope, representation: str = "vertices") -> dict:
    if representation == "vertices":
        return {"dim": P.dim, "vertices": [[qstr(c) for c in v] for v in P.vertices]}
    if representation == "facets":
        if not P.full_dim:
            raise RepresentationError("only full-dimensional polytopes have a facet file")
        return {"dim": P.dim, "facets": [{"u": [qstr(a) for a in L.u], "h": qstr(L.h)} for L in P.facets]}
    raise ValueError(f"unknown representation {representation!r}")


def dumps(P: Polytope, representation: str = "vertices") -> str:
    return json.dumps(polytope_to_document(P, representation))


def save_polytope(P: Polytope, path, representation: str = "vertices"):
    Path(path).write_text(dumps(P, representation) + "\n")
