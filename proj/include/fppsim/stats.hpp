#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fppsim/rng.hpp"

namespace fpp {

/// Empirical q-quantile a with P(X <= a) > q on the empirical law:
/// the (floor(q*N)+1)-th order statistic. q = 0 gives the sample minimum.
double lower_quantile_sorted(std::span<const double> sorted, double q);

/// Empirical (1-q)-quantile b with P(X >= b) > q: mirror of the above.
double upper_quantile_sorted(std::span<const double> sorted, double q);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);

/// k-th central absolute moment E|X - mean|^k.
double central_abs_moment(std::span<const double> xs, double k);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|; tie-safe.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// One-sample KS distance against a continuous CDF.
double ks_vs_cdf(std::vector<double> xs, const std::function<double(double)>& cdf);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::vector<double> residuals;
};

/// Ordinary least squares of y on x.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Bootstrap resample (with replacement) of xs.
std::vector<double> bootstrap_resample(std::span<const double> xs, Rng& rng);

}  // namespace fpp
