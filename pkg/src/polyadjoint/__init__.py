"""Exact adjoints, canonical forms, degree drops and the valuations
Omega_0 and Omega_s of rational convex polytopes."""

from .algebra import LinearForm, MultiPoly, RatFn, ratfn
from .canonical import (
    adjoint,
    adjoint_and_drop,
    drop,
    dual_volume_at,
    facet_restriction,
    homogenized_adjoint,
    omega,
    omega0,
    omega_s,
    omega_s_all,
)
from .families import generate_family
from .io import load_polytope, save_polytope
from .polytope import Polytope, from_inequalities, from_points
from .theorems import CheckReport, classify_polytope

__all__ = [
    "CheckReport",
    "LinearForm",
    "MultiPoly",
    "Polytope",
    "RatFn",
    "adjoint",
    "adjoint_and_drop",
    "classify_polytope",
    "drop",
    "dual_volume_at",
    "facet_restriction",
    "from_inequalities",
    "from_points",
    "generate_family",
    "homogenized_adjoint",
    "load_polytope",
    "omega",
    "omega0",
    "omega_s",
    "omega_s_all",
    "ratfn",
    "save_polytope",
]
