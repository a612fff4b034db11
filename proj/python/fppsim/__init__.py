"""First-passage percolation on the square, tube, and torus: passage times,
the cylinder growth representation, entropic CLT bounds, and the Gaussian
max fluctuation toolkit."""

from fppsim._core import (  # noqa: F401
    Environment,
    GrowthTrace,
    __version__,
    couple,
    coupling_bound,
    cylinder_time,
    dispersive_check,
    empirical_tv,
    entropy_exponential,
    entropy_gaussian,
    estimate_a_hat,
    exponent_fit,
    fluct_interval,
    fluctuation_estimate,
    grow,
    growth_vs_dijkstra,
    hitting_count_check,
    in_fundamental_domain,
    logconcavity_certificate,
    max_cdf,
    max_quantile,
    norm_cdf,
    partition_heights,
    point_to_point,
    quantile_shift_derivative,
    sample_environment,
    sample_time,
    simulate,
    square_time,
    standardized_coefficients,
    torus_time,
    trace_moments,
    tube_time,
    tv_bound,
    upsilon_check,
)
