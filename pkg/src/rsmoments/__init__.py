"""Reciprocal-sum moments of partitions into distinct parts.

Exact values through rational power series, full circle-method
asymptotic sums, and the verification machinery tying the two together.
"""

from .modarith import (
    FareyNeighborhood,
    UnitPhase,
    dedekind_sum,
    farey_neighborhood,
    inverse_neg_mod8,
    kloosterman_A,
    log_multiplier_ratio,
    omega,
)
from .qseries import (
    MomentValue,
    RationalSeries,
    distinct_product_series,
    enumerate_moment,
    g_series,
    partition_series,
    s_moment_series,
)
from .specfun import (
    ContourParams,
    PrecisionContext,
    bernoulli_poly,
    bessel_i,
    bessel_i_order_deriv,
    bessel_integral_II,
    bessel_k,
    contour_quadrature_Isl,
    polylog,
    zeta_value,
)
from .asymp import (
    LEvalContext,
    TermCoefficients,
    L_asymptotic,
    L_direct,
    abc_constants,
    coefficient_table,
    rademacher_p,
    s1_asymptotic,
    s1_mainterm,
    s2_asymptotic,
    s2_mainterm,
)

__all__ = [
    "ContourParams",
    "FareyNeighborhood",
    "LEvalContext",
    "MomentValue",
    "PrecisionContext",
    "RationalSeries",
    "TermCoefficients",
    "UnitPhase",
    "L_asymptotic",
    "L_direct",
    "abc_constants",
    "bernoulli_poly",
    "bessel_i",
    "bessel_i_order_deriv",
    "bessel_integral_II",
    "bessel_k",
    "coefficient_table",
    "contour_quadrature_Isl",
    "dedekind_sum",
    "distinct_product_series",
    "enumerate_moment",
    "farey_neighborhood",
    "g_series",
    "inverse_neg_mod8",
    "kloosterman_A",
    "log_multiplier_ratio",
    "omega",
    "partition_series",
    "polylog",
    "rademacher_p",
    "s1_asymptotic",
    "s1_mainterm",
    "s2_asymptotic",
    "s2_mainterm",
    "s_moment_series",
    "zeta_value",
]

__version__ = "0.1.0"
