"""Exact lattice polytopes, polyhedral fans and tropical intersection numbers."""

from .algebra import (
    HilbertFunction,
    HomogeneousPolynomial,
    PolytopeBasis,
    annihilator_membership,
    apply_operator,
    hilbert_function,
    poincare_check,
    volume_polynomial,
)
from .errors import DomainError, ParseError, ResourceError, TropkitError
from .fan import (
    Cone,
    Fan,
    ShiftedComplex,
    ShiftPolicy,
    WeightedFan,
    common_refinement,
    intersection_number_at,
    is_balanced,
    is_complete,
    is_transverse,
    quotient_generator,
    stable_intersection_number,
    validate_fan,
    weighted_equivalent,
    weighted_sum,
)
from .lattice import (
    Sublattice,
    hermite_normal_form,
    integral_volume_form,
    lattice_index,
    primitive,
    saturate,
    smith_invariants,
)
from .polytope import (
    LatticePolytope,
    VirtualPolytope,
    convex_hull,
    edges,
    facet_integral_volume,
    facets,
    minkowski_sum,
    mixed_volume,
    normal_fan,
    pascal_residual,
    scale,
    volume,
    volume_ehrhart_oracle,
)
from .svg import render_svg
from .tropical import (
    GENERIC,
    LaurentPolynomial,
    TropicalHypersurface,
    bkk_count,
    bkk_via_fans,
    newton_polytope,
    parse_laurent,
    tropical_hypersurface,
    verify_bergman_shape,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "ParseError",
    "ResourceError",
    "TropkitError",
    "render_svg",
    "HilbertFunction",
    "HomogeneousPolynomial",
    "PolytopeBasis",
    "annihilator_membership",
    "apply_operator",
    "hilbert_function",
    "poincare_check",
    "volume_polynomial",
    "Cone",
    "Fan",
    "ShiftedComplex",
    "ShiftPolicy",
    "WeightedFan",
    "common_refinement",
    "intersection_number_at",
    "is_balanced",
    "is_complete",
    "is_transverse",
    "quotient_generator",
    "stable_intersection_number",
    "validate_fan",
    "weighted_equivalent",
    "weighted_sum",
    "Sublattice",
    "hermite_normal_form",
    "integral_volume_form",
    "lattice_index",
    "primitive",
    "saturate",
    "smith_invariants",
    "LatticePolytope",
    "VirtualPolytope",
    "convex_hull",
    "edges",
    "facet_integral_volume",
    "facets",
    "minkowski_sum",
    "mixed_volume",
    "normal_fan",
    "pascal_residual",
    "scale",
    "volume",
    "volume_ehrhart_oracle",
    "GENERIC",
    "LaurentPolynomial",
    "TropicalHypersurface",
    "bkk_count",
    "bkk_via_fans",
    "newton_polytope",
    "parse_laurent",
    "tropical_hypersurface",
    "verify_bergman_shape",
]
