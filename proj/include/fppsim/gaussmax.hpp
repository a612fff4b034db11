#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fpp {

double norm_pdf(double x);
double norm_cdf(double x);
/// log of the standard normal CDF, with an asymptotic series for the far
/// left tail where erfc underflows.
double norm_logcdf(double x);
/// Hazard-type ratio pdf(x)/cdf(x), evaluated in log space so the left tail
/// does not degenerate to 0/0.
double norm_pdf_over_cdf(double x);

struct NormalSpec {
    double mean = 0.0;
    double sigma = 1.0;
};

struct LogConcavityCertificate {
    double min_value = 0.0;
    double argmin = 0.0;
};

/// Dense evaluation of F(x) = -x f(x) Phi(x) - f(x)^2 + Phi(x)^2 over the
/// grid; F >= 0 everywhere certifies log-concavity of f/Phi.
LogConcavityCertificate logconcavity_certificate(double lo, double hi, double step);

/// P(max_i Z_i <= z) for independent Z_i ~ N(mean_i, sigma_i^2).
double max_cdf(double z, std::span<const NormalSpec> specs);

/// Unique z with max_cdf(z) = t, bracketing + bisection to 1e-12.
double max_quantile(double t, std::span<const NormalSpec> specs);

/// d/da of the t-quantile of max{Z_1+a, Z_2, ..., Z_n} at a = 0, for the
/// variable at shifted_index:
///   r_k / sum_i r_i  with  r_i = f_i(z)/F_i(z),  z the t-quantile.
double quantile_shift_derivative(double t, std::span<const NormalSpec> specs,
                                 std::size_t shifted_index);

struct DispersiveReport {
    bool less_dispersed = false;
    double worst_margin = 0.0;  // min over pairs of (gap_Y - gap_X)
};

/// Checks q_X(b)-q_X(a) <= q_Y(b)-q_Y(a) on every pair, with slack
/// tolerance for root-finding noise.
DispersiveReport dispersive_check(const std::function<double(double)>& q_x,
                                  const std::function<double(double)>& q_y,
                                  std::span<const std::pair<double, double>> pairs,
                                  double slack = 1e-9);

struct FluctuationInterval {
    double a_n = 0.0;
    double b_n = 0.0;
    double c = 0.0;  // witnessed two-sided tail mass, in (0, 1/2]
};

struct FluctIntervalResult {
    bool found = false;
    FluctuationInterval interval;
    double best_min_tail = 0.0;  // best achievable min tail over the scan
};

/// Searches, by exact CDF evaluation over a quantile grid, for an interval
/// [a_n, a_n + w] of width w = min sigma_i / sqrt(1 + log n) whose two tails
/// under max_i Z_i both carry mass >= c_target.
FluctIntervalResult fluct_interval(std::span<const NormalSpec> specs, double c_target);

}  // namespace fpp
