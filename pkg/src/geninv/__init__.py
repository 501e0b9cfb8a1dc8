"""Exact generalized inverses in unital rings.

Inner and reflexive inverses, Green's preorders, the inverse along an
element (and along a product ``p m q``), and closed forms for the inverse
along 2x2 block matrices, each checkable against brute force on finite rings.
"""

from geninv.block import (
    Block2x2,
    BlockResult,
    flattened_inverse_along,
    inverse_along_220,
    inverse_along_d4_invertible,
    inverse_along_ed2_zero,
    inverse_along_general,
    inverse_along_lower_triangular,
    lt_regular_inner,
    schur_decompose,
)
from geninv.errors import CapabilityError, GeninvError, InvariantViolation, PreconditionError, UsageError
from geninv.green import GreenWitness, decide, green_H, green_L, green_R, leq_H, leq_L, leq_R
from geninv.mary import (
    MaryResult,
    corner_invertible,
    exists_via_H,
    inverse_along,
    inverse_along_product,
    jacobson_invert,
    mary_oracle,
    product_problem,
)
from geninv.regularity import all_inner_inverses, inner_inverse, is_regular, reflexive_inverse
from geninv.results import NotInvertibleAlong, NotRegular, NotRelated
from geninv.rings import (
    Element,
    MatrixRing,
    ModularInt,
    PrimeField,
    Rationals,
    enumerate_elements,
    is_unit,
    matrix,
    try_invert,
)
from geninv.syntax import ParseError, format_element, format_ring, parse_element, parse_ring
from geninv.verify import Mode, VerificationReport, replay, run_check, search_question

__version__ = "0.1.0"
