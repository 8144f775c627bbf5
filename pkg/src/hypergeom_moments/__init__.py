"""Exact moments of the multivariate hypergeometric distribution."""

from .combinatorics import (
    StirlingTable,
    binomial,
    build_stirling_table,
    falling_factorial,
    stirling2,
)
from .distribution import (
    DimensionError,
    DistributionParams,
    NonIntegralPopulationError,
    ParameterError,
    enumerate_support,
    params_from_counts,
    params_from_probs,
    pmf,
    probs_of,
)
from .kinds import MomentKind
from .moments import (
    MomentResult,
    alpha_grid,
    central_moment,
    compute_moment,
    correction_factor,
    covariance_matrix,
    factorial_moment,
    mean_vector,
    multinomial_factorial_moment,
    multinomial_noncentral_moment,
    noncentral_moment,
)
from .oracle import brute_force_moment, mc_moment_estimate, sample
from .verification import OracleReport, verify

__version__ = "0.1.0"
