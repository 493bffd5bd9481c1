"""Exact germ-level calculus for manifolds with corners.

Local models, map germs with boundary-transfer data, a polynomial
front end, transverse fibre products with their corner bookkeeping,
orientation sign conventions, and glued-chart presentations; all over
exact rational arithmetic.
"""

from .errors import (
    BadFace,
    BadLabel,
    CornerCalcError,
    HypothesisNotMet,
    InternalInvariantViolation,
    InvalidGerm,
    ModelMismatch,
    NoMediator,
    NotSmoothAtOrigin,
    NotSubmersion,
    NotTransverse,
    ParseError,
    PointOutsideModel,
)
from .model import (
    ModelCorner,
    boundary,
    corners_count,
    depth_of_point,
    iterated_boundary_count,
    product,
    strata,
)
from .germ import (
    BoundaryDecomposition,
    CornerMapGerm,
    CornerPointMap,
    boundary_decomposition,
    boundary_lifts,
    compose,
    corner_map,
    corner_map_flat,
    direct_product_germ,
    face_inclusion_germ,
    identity_germ,
    inverse_germ,
    is_b_submersive,
    is_immersion,
    is_isomorphism,
    is_submersion,
    product_germ,
    projection_germ,
    submersion_normal_form,
    transfer_partition,
)
from .poly import (
    BMapGerm,
    Classification,
    PolyMap,
    Polynomial,
    classify_at_origin,
    compose_poly,
    germ_of,
    parse_polynomial,
)
from .fibre import (
    FibreLedger,
    TransversalityInterface,
    boundary_of_fibre_product,
    check_universal_property,
    corner_identity_check,
    fibre_product,
    interface_data,
    is_strongly_transverse,
    is_transverse,
    matched_triples,
    submersion_boundary_identity,
)
from .orient import (
    OrientedModel,
    boundary_orientation_sign,
    fibre_product_orientation,
    iterated_boundary_sign,
    product_orientation,
    verify_sign_identity,
)
from .complexes import (
    CornerComplex,
    Gluing,
    AffineFaceMap,
    boundary_complex,
    boundary_graph,
    classify,
    corners_complex,
    product_complex,
)

__version__ = "0.1.0"
