"""Exact-arithmetic toolkit for moment polytopes.

Validates the Delzant conditions on rational polytopes, decomposes them
into signed half-open vertex cones for indicator and lattice-point
identities, computes moment-graph cohomology by exact divisibility
constraints, and evaluates fixed-point sums for volumes and push-forwards.
Every computation is over the rationals and is cross-checked against an
independent brute-force oracle.
"""

from .algebra import (
    Poly,
    Vec,
    divides_linear,
    dot,
    generic_vector,
    poly_quotient_by_linear,
    primitive,
)
from .errors import (
    DegenerateInputError,
    DomainError,
    EmptyRegionError,
    NonSimpleVertexError,
    NotDelzantError,
    NotGenericError,
    NotPolarizingError,
    UnboundedRegionError,
)
from .polytopes import (
    HalfSpace,
    Polytope,
    SmoothnessReport,
    VertexFigure,
    catalog_specs,
    cube,
    dilate,
    from_halfspaces,
    from_spec,
    hirzebruch,
    is_simple,
    is_smooth,
    lattice_points_oracle,
    simplex,
    smoothness_report,
    tight_box,
    volume_oracle,
)
from .polar import (
    PolarizedCone,
    choose_polarizing_vector,
    cone_contains,
    is_polarizing,
    polar_decompose,
    polarize,
    signed_indicator_sum,
    signed_lattice_count,
    tangent_cone,
)
from .gkm import (
    GKMCheckReport,
    MomentGraph,
    betti_numbers,
    facet_class,
    flip_weights,
    free_module_check,
    gkm_check,
    gkm_degree_basis,
    gkm_dimension,
    moment_graph,
    ordinary_betti,
)
from .localization import (
    FixedPointData,
    choose_evaluation_point,
    euler_class_at,
    fixed_point_data,
    pushforward,
    pushforward_degree_vanishing,
    volume_localization,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
