"""Closed-form asymptotics of AR(k) lattice sums.

The per-step limit of the k-fold lattice sum over shifted absolute-value
exponents has a closed form in the characteristic roots; this package
evaluates it, cross-checks it with independent brute-force oracles, and
simulates the underlying autoregression.
"""

from .charpoly import (
    MonicPolynomial,
    char_polynomial,
    coefficient_residual,
    is_stationary,
    match_roots,
    poly_from_roots,
    solve_roots,
)
from .errors import (
    ArkLimitError,
    BudgetExceededError,
    ClusteredRootsError,
    EmptyInputError,
    InvalidParameterError,
    LagTooLargeError,
    LengthMismatchError,
    NoConvergenceError,
    NonStationaryError,
    OutsideAnnulusError,
    RealnessViolationError,
)
from .evaluate import (
    CLUSTER_TOL,
    REALNESS_RTOL,
    ResidueSet,
    generating_function,
    lattice_sum_limit,
    lattice_sum_limit_confluent,
    residue_coefficients,
    root_clusters,
)
from .model import (
    ARCoefficients,
    EvalResult,
    RootMultiset,
    ShiftVector,
    validate_roots,
)
from .oracles import (
    DIRECT_SUM_BUDGET,
    SlopeEstimate,
    choose_truncation,
    contour_coefficient,
    default_contour_points,
    lattice_sum_direct,
    slope_estimate,
    truncated_tuple_sum,
)
from .simulate import (
    SeriesSample,
    gaussian_variates,
    lagged_cross_sum,
    serial_correlation,
    series_sum,
    simulate,
    write_series,
)

__version__ = "0.1.0"

__all__ = [
    "ARCoefficients",
    "ArkLimitError",
    "BudgetExceededError",
    "CLUSTER_TOL",
    "ClusteredRootsError",
    "DIRECT_SUM_BUDGET",
    "EmptyInputError",
    "EvalResult",
    "InvalidParameterError",
    "LagTooLargeError",
    "LengthMismatchError",
    "MonicPolynomial",
    "NoConvergenceError",
    "NonStationaryError",
    "OutsideAnnulusError",
    "REALNESS_RTOL",
    "RealnessViolationError",
    "ResidueSet",
    "RootMultiset",
    "SeriesSample",
    "ShiftVector",
    "SlopeEstimate",
    "char_polynomial",
    "choose_truncation",
    "coefficient_residual",
    "contour_coefficient",
    "default_contour_points",
    "gaussian_variates",
    "generating_function",
    "is_stationary",
    "lagged_cross_sum",
    "lattice_sum_direct",
    "lattice_sum_limit",
    "lattice_sum_limit_confluent",
    "match_roots",
    "poly_from_roots",
    "residue_coefficients",
    "root_clusters",
    "serial_correlation",
    "series_sum",
    "simulate",
    "slope_estimate",
    "solve_roots",
    "truncated_tuple_sum",
    "validate_roots",
    "write_series",
]
