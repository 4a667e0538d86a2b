"""Exact rational geometry of plane convex polygons.

Decides lattice width, rational diameter, Z- and R-delta2-freeness,
inclusion-maximality (with verifiable lock witnesses per facet), and
certifies bounds on parametric width ratios by exact branch-and-bound.
All arithmetic uses ``fractions.Fraction``; floats are rejected at every
boundary.
"""

from .flatness import (
    CASE1,
    CASE2,
    CaseSpec,
    CertificateError,
    Interval1D,
    Leaf,
    LinearForm3,
    ParamPoint,
    QuadCrossResult,
    QuadRectResult,
    RatioCertificate,
    bb_certify_max,
    builtin_cases,
    case_polytope,
    delta,
    feasible_box,
    flt1_oracle,
    flt1_z,
    interval,
    linear_form,
    linearity_region_vertices,
    param_point,
    param_triangle,
    param_triangle_vertices,
    quad_cross,
    quad_rect,
    replay_certificate,
)
from .freeness import (
    FreenessVerdict,
    contains_copy,
    enum_unimodular_triangles,
    interior_translate_exists,
    is_r_delta2_free,
    is_z_delta2_free,
    translation_classes,
)
from .geometry import (
    HalfPlane,
    Point,
    Polygon,
    as_rat,
    bounding_box,
    clip,
    contains_point,
    contains_polygon,
    convex_hull,
    dimension,
    doubled_area,
    edges,
    halfplanes,
    intersect,
    lattice_points,
    minkowski_difference,
    minkowski_sum,
    point,
    vertex_centroid,
)
from .lattice import (
    ChordResult,
    UnimodularMap,
    WidthResult,
    apply_map,
    as_ring,
    is_unimodular_delta2_copy,
    lattice_width,
    primitive_direction,
    rational_diameter,
    unimodular_equivalent,
    width_along,
)
from .maximality import (
    FacetReport,
    LockWitness,
    MaximalityReport,
    WitnessRejection,
    facet_endpoints,
    r_locked_check,
    r_locked_search,
    r_maximal_certified,
    z_facet_locked,
    z_inclusion_maximal,
)
from .reports import ReplayError, replay_report, run_command

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # geometry
    "Point",
    "point",
    "HalfPlane",
    "Polygon",
    "as_rat",
    "convex_hull",
    "dimension",
    "edges",
    "halfplanes",
    "clip",
    "intersect",
    "minkowski_sum",
    "minkowski_difference",
    "contains_point",
    "contains_polygon",
    "vertex_centroid",
    "doubled_area",
    "bounding_box",
    "lattice_points",
    # lattice
    "as_ring",
    "width_along",
    "WidthResult",
    "lattice_width",
    "ChordResult",
    "rational_diameter",
    "UnimodularMap",
    "apply_map",
    "is_unimodular_delta2_copy",
    "unimodular_equivalent",
    "primitive_direction",
    # freeness
    "FreenessVerdict",
    "enum_unimodular_triangles",
    "translation_classes",
    "is_z_delta2_free",
    "is_r_delta2_free",
    "contains_copy",
    "interior_translate_exists",
    # maximality
    "LockWitness",
    "WitnessRejection",
    "FacetReport",
    "MaximalityReport",
    "facet_endpoints",
    "z_facet_locked",
    "z_inclusion_maximal",
    "r_locked_check",
    "r_locked_search",
    "r_maximal_certified",
    # flatness
    "Interval1D",
    "interval",
    "flt1_z",
    "flt1_oracle",
    "ParamPoint",
    "param_point",
    "delta",
    "LinearForm3",
    "linear_form",
    "CaseSpec",
    "CASE1",
    "CASE2",
    "builtin_cases",
    "param_triangle_vertices",
    "param_triangle",
    "case_polytope",
    "feasible_box",
    "linearity_region_vertices",
    "Leaf",
    "CertificateError",
    "RatioCertificate",
    "bb_certify_max",
    "replay_certificate",
    "QuadRectResult",
    "quad_rect",
    "QuadCrossResult",
    "quad_cross",
    # reports
    "ReplayError",
    "replay_report",
    "run_command",
]
