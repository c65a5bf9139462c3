"""Exact Frobenius-root chains and differential operators over F_p."""

from .chain import ChainLevel, ChainReport, auto_cap, compute_chain, stabilization_level
from .diffop import (
    Compose,
    DiffOperator,
    FrobTwist,
    Leaf,
    OperatorExpr,
    apply_localized,
    apply_operator,
    delta_level,
    dual_projection,
    format_expr,
    format_operator,
    frobenius_twist,
    generator_witness,
    minimal_delta,
    monomial_fast_path,
    normalize_fraction,
    parse_operator,
    parse_operator_expr,
    synthesize_delta,
    verify_delta,
)
from .errors import (
    ContextMismatch,
    DivisionByZero,
    EnumerationLimitExceeded,
    ExponentOverflow,
    LevelMismatch,
    NotMember,
    ParseError,
)
from .field import FieldScalar, RingContext, ff_inv, ff_pth_root, is_prime, lucas_binomial
from .frobenius import FrobDecomposition, frob_decompose, frobenius_root_ideal
from .ideal import (
    Ideal,
    bracket_power,
    divide_with_cofactors,
    exact_divide,
    ideal_equal,
    ideal_product,
    normal_form,
    reduced_groebner,
    unit_ideal,
)
from .poly import (
    Poly,
    apply_divided_power,
    format_poly,
    frobenius_power,
    parse_poly,
    pow_ps_minus_one,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
