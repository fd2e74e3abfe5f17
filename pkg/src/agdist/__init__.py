"""Goppa-like AG codes on C_{a,b} curves and the Schur-square distinguisher."""

from __future__ import annotations

from .bounds import (
    BoundReport,
    bound_report,
    distinguishable,
    generic_bound,
    goppa_like_bound,
    i_star,
    leading_exponents,
    m_i_dimension,
    one_point_bound,
    t_i_dimensions,
)
from .cab import AffinePoint, CabCurve, elliptic_curve, hermitian_curve, rational_curve
from .ff import Elt, FieldCtx, coords_over_subfield, frobenius, trace_to_base
from .goppa import (
    ExplicitDivisor,
    GoppaLikeInstance,
    build,
    c1_dimension,
    classical_goppa,
    floor_divisor,
    random_goppa_function,
    rational_zeros,
)
from .lincode import (
    LinearCode,
    dual,
    power_code,
    schur_product,
    schur_square,
    subfield_subcode,
    trace_code,
)
from .params import (
    ParamRow,
    elliptic_max_distinguishable_s,
    hermitian_resists,
    hermitian_row,
    key_size_bits,
    prange_bits,
)
from .ring import (
    CurveFunction,
    monomial_basis,
    normal_form,
    remainder_space_basis,
    trace_reduce,
    weighted_divide,
)

__version__ = "0.1.0"
