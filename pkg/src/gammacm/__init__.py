"""Gamma-function expansions with certified remainders.

Evaluates log Gamma, the Barnes-G remainder, and the double-gamma
expansion with rigorous error control, and verifies numerically that the
expansion remainders are completely monotonic of the claimed orders via
their Laplace kernel representations.
"""

from .bernoulli import (
    RationalTable,
    bernoulli_number,
    bernoulli_poly,
    default_table,
    double_bernoulli_number,
    double_bernoulli_poly,
)
from .errors import (
    AccuracyError,
    ConvergenceError,
    DomainError,
    GammaCMError,
    TableLimitError,
)
from .expansions import (
    BracketedValue,
    Gamma2Expansion,
    barnesg_remainder,
    cm_fixture,
    loggamma,
    loggamma2,
    loggamma_partial,
    stirling_coefficient,
)
from .kernels import (
    HelperKind,
    KernelEval,
    KernelId,
    KernelKind,
    kernel_eval,
    p_series,
    v_closed0,
    v_integral,
    v_recursion,
    v_series,
    v_zero,
)
from .monotonicity import (
    CMOrderSpec,
    MonotonicityReport,
    cm_order_check,
    finite_difference,
    kernel_positivity_check,
)
from .quadrature import (
    QuadratureResult,
    binet_integral,
    fractional_integral,
    laplace,
)

__all__ = [
    "AccuracyError",
    "BracketedValue",
    "CMOrderSpec",
    "ConvergenceError",
    "DomainError",
    "Gamma2Expansion",
    "GammaCMError",
    "HelperKind",
    "KernelEval",
    "KernelId",
    "KernelKind",
    "MonotonicityReport",
    "QuadratureResult",
    "RationalTable",
    "TableLimitError",
    "barnesg_remainder",
    "bernoulli_number",
    "bernoulli_poly",
    "binet_integral",
    "cm_fixture",
    "cm_order_check",
    "default_table",
    "double_bernoulli_number",
    "double_bernoulli_poly",
    "finite_difference",
    "fractional_integral",
    "kernel_eval",
    "kernel_positivity_check",
    "laplace",
    "loggamma",
    "loggamma2",
    "loggamma_partial",
    "p_series",
    "stirling_coefficient",
    "v_closed0",
    "v_integral",
    "v_recursion",
    "v_series",
    "v_zero",
]
