"""Expanded reals, point-mass densities, and their integrals.

The ring of expanded reals adjoins to the reals a single infinite unit
``w`` and its rational powers; finite formal sums ``sum a_j * w^(p_j)``
with descending nonnegative exponents order themselves by leading
coefficient.  Densities over R^n may carry point masses -- ``delta(a, b)``
is worth ``a*w`` exactly at ``b`` and zero elsewhere -- and integrate to
ordinary reals: quadrature for the smooth part, exact bookkeeping for the
masses.
"""

__version__ = "0.1.0"

from .backend import active_backend_name, available_backends, force_backend
from .density1d import (
    DeltaTrain,
    Density1D,
    add_density,
    delta,
    density1d_to_json,
    eval_density,
    fn_hy,
    fn_re,
    integrate_1d,
    integrate_1d_result,
    mul_density,
    scale_density,
    smooth_density,
)
from .densitynd import (
    DensityND,
    MultiAtom,
    Permutation,
    TensorTerm,
    density_to_json,
    eval_nd,
    fn_hy_nd,
    fn_re_nd,
    from_density1d,
    integrate_nd,
    integrate_nd_result,
    permute_vars,
    tensor,
    to_density1d,
)
from .errors import (
    DimensionTooLarge,
    EvalDomainError,
    HyperdeltaError,
    InvalidExponent,
    LexError,
    NonConvergent,
    NormalizeError,
    NotIntegrable,
    ParseError,
    PermutationArityError,
    SpanError,
)
from .expr import (
    Add,
    Call,
    Const,
    Div,
    Mul,
    Neg,
    Pow,
    SmoothExpr,
    Sub,
    Var,
    eval_expr,
    pretty_expr,
)
from .normalize import normalize, normalize_text
from .parser import ast_equal, ast_to_json, parse, pretty_ast, tokenize
from .quadrature import (
    QuadratureConfig,
    QuadratureResult,
    integrate_real_1d,
    integrate_real_1d_result,
    integrate_real_nd,
    integrate_real_nd_result,
)
from .ring import (
    CoeffMode,
    ExpandedReal,
    Ordering,
    ZERO,
    coefficient_mode,
    compare,
    current_coefficient_mode,
    embed,
    format_expanded,
    format_number,
    hy_part,
    make,
    num_to_json,
    parse_expanded,
    re_part,
)

__all__ = [
    "__version__",
    # ring
    "ExpandedReal", "ZERO", "make", "embed", "compare", "Ordering",
    "re_part", "hy_part", "CoeffMode", "coefficient_mode",
    "current_coefficient_mode", "format_expanded", "format_number",
    "num_to_json", "parse_expanded",
    # smooth expressions
    "SmoothExpr", "Const", "Var", "Neg", "Add", "Sub", "Mul", "Div",
    "Pow", "Call", "eval_expr", "pretty_expr",
    # quadrature
    "QuadratureConfig", "QuadratureResult",
    "integrate_real_1d", "integrate_real_1d_result",
    "integrate_real_nd", "integrate_real_nd_result",
    # one variable
    "Density1D", "DeltaTrain", "delta", "smooth_density", "add_density",
    "scale_density", "mul_density", "eval_density", "fn_re", "fn_hy",
    "integrate_1d", "integrate_1d_result", "density1d_to_json",
    # several variables
    "DensityND", "TensorTerm", "MultiAtom", "Permutation", "tensor",
    "permute_vars", "eval_nd", "fn_re_nd", "fn_hy_nd", "integrate_nd",
    "integrate_nd_result", "from_density1d", "to_density1d",
    "density_to_json",
    # language
    "tokenize", "parse", "pretty_ast", "ast_equal", "ast_to_json",
    "normalize", "normalize_text",
    # backends
    "active_backend_name", "available_backends", "force_backend",
    # errors
    "HyperdeltaError", "InvalidExponent", "EvalDomainError",
    "NonConvergent", "DimensionTooLarge", "NotIntegrable",
    "PermutationArityError", "SpanError", "LexError", "ParseError",
    "NormalizeError",
]
