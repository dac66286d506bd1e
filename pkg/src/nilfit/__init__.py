"""Exact hyperplane fitting through the index of nilpotency of products-of-linear-forms ideals."""

from .errors import (
    CapExceededError,
    DegeneratePointSetError,
    DuplicatePointError,
    EmptyInputError,
    FitError,
    InternalInconsistencyError,
    NotGenericError,
)
from .fields import GF, QQ, FieldElement, FieldError, PrimeField, RationalField, field_from_descriptor
from .fitting import (
    Arrangement,
    Coatom,
    FatPointScheme,
    FitReport,
    Hyperplane,
    PointSet,
    check_generic,
    coatoms,
    dehomogenize,
    dual_arrangement,
    embed_affine,
    fat_point_ideal,
    hyp_via_nil,
    local_power_identity,
    max_hyperplanes,
    min_distance,
    products_ideal,
    radical_of_products,
    verify_decomposition,
)
from .groebner import GroebnerBasis, ResourceLimitError, buchberger, normal_form, s_polynomial
from .ideals import (
    Ideal,
    Limits,
    NilResult,
    ideal_equal,
    ideal_intersect,
    ideal_member,
    ideal_power,
    ideal_quotient,
    is_unit_ideal,
    nil_index,
    saturation,
)
from .monomials import MonomialOrder
from .polynomial import Polynomial, PolynomialSyntaxError, PolyRing, format_polynomial, parse_polynomial

SCHEMA = "nilfit/1"
__version__ = "0.1.0"
