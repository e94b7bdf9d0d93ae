"""Exact toric geometry for smooth complete fans: support functions,
nef and ample divisors, Demazure roots, and a runtime check that a toric
Fano manifold with all invariant divisors nef is a product of projective
spaces."""

from .demazure import (
    ProductDecomposition,
    Root,
    RootSystem,
    demazure_roots,
    detect_product,
    is_reductive,
    nef_divisor_roots,
    semisimple_rank,
)
from .divisor import (
    NefCertificate,
    SupportFunction,
    ToricDivisor,
    anticanonical,
    divisor_polytope,
    is_ample,
    is_fano,
    is_nef,
    support_function,
)
from .fan import Cone, Fan, is_complete, is_smooth, normal_fan, product, validate
from .pipeline import AnalysisReport, analyze, theorem_sweep
from .polytope import (
    Halfspace,
    HPolytope,
    VPolytope,
    canonical_form,
    dual_polytope,
    facets_from_vertices,
    is_reflexive,
    lattice_points,
    vertices_from_facets,
)

__all__ = [
    "AnalysisReport",
    "analyze",
    "anticanonical",
    "canonical_form",
    "Cone",
    "demazure_roots",
    "detect_product",
    "divisor_polytope",
    "dual_polytope",
    "facets_from_vertices",
    "Fan",
    "Halfspace",
    "HPolytope",
    "is_ample",
    "is_complete",
    "is_fano",
    "is_nef",
    "is_reductive",
    "is_reflexive",
    "is_smooth",
    "lattice_points",
    "nef_divisor_roots",
    "NefCertificate",
    "normal_fan",
    "product",
    "ProductDecomposition",
    "Root",
    "RootSystem",
    "semisimple_rank",
    "support_function",
    "SupportFunction",
    "theorem_sweep",
    "ToricDivisor",
    "validate",
    "vertices_from_facets",
    "VPolytope",
]

__version__ = "0.1.0"
