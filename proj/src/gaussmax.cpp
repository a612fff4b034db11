#include "fppsim/gaussmax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace fpp {
namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440084436210485;
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

// Specs grouped by identical (mean, sigma) so that products over large
// i.i.d. families evaluate in O(#groups) instead of O(n).
struct GroupedSpecs {
    std::vector<NormalSpec> unique;
    std::vector<double> multiplicity;

    explicit GroupedSpecs(std::span<const NormalSpec> specs) {
        std::map<std::pair<double, double>, double> groups;
        for (const auto& s : specs) {
            if (!(s.sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
            groups[{s.mean, s.sigma}] += 1.0;
        }
        for (const auto& [key, count] : groups) {
            unique.push_back(NormalSpec{key.first, key.second});
            multiplicity.push_back(count);
        }
    }

    double log_cdf(double z) const {
        double s = 0.0;
        for (std::size_t g = 0; g < unique.size(); ++g)
            s += multiplicity[g] * norm_logcdf((z - unique[g].mean) / unique[g].sigma);
        return s;
    }
    double cdf(double z) const { return std::exp(log_cdf(z)); }
};

double grouped_quantile(double t, const GroupedSpecs& grouped) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("quantile level must lie in (0,1)");
    const double log_t = std::log(t);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : grouped.unique) {
        lo = std::min(lo, s.mean - 8.0 * s.sigma);
        hi = std::max(hi, s.mean + 8.0 * s.sigma);
    }
    double step = hi - lo > 0.0 ? hi - lo : 1.0;
    while (grouped.log_cdf(lo) > log_t) {
        lo -= step;
        step *= 2.0;
    }
    step = hi - lo;
    while (grouped.log_cdf(hi) < log_t) {
        hi += step;
        step *= 2.0;
    }
    while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;  // at double resolution
        if (grouped.log_cdf(mid) < log_t)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double norm_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

double norm_cdf(double x) { return 0.5 * std::erfc(-x * kInvSqrt2); }

double norm_logcdf(double x) {
    if (x > -37.0) return std::log(norm_cdf(x));
    // Asymptotic expansion of Mills' ratio: Phi(x) ~ phi(x)/|x| * (1 - 1/x^2 + 3/x^4 - ...)
    const double x2 = x * x;
    const double series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
    return -0.5 * x2 - kLogSqrt2Pi - std::log(-x) + std::log(series);
}

double norm_pdf_over_cdf(double x) {
    return std::exp(-0.5 * x * x - kLogSqrt2Pi - norm_logcdf(x));
}

LogConcavityCertificate logconcavity_certificate(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) throw std::invalid_argument("bad certificate grid");
    LogConcavityCertificate cert{std::numeric_limits<double>::infinity(), lo};
    const long points = static_cast<long>(std::floor((hi - lo) / step)) + 1;
    for (long i = 0; i < points; ++i) {
        const double x = lo + i * step;
        const double f = norm_pdf(x);
        const double phi = norm_cdf(x);
        const double value = -x * f * phi - f * f + phi * phi;
        if (value < cert.min_value) {
            cert.min_value = value;
            cert.argmin = x;
        }
    }
    return cert;
}

double max_cdf(double z, std::span<const NormalSpec> specs) {
    if (specs.empty()) throw std::invalid_argument("max_cdf needs at least one spec");
    return GroupedSpecs(specs).cdf(z);
}

double max_quantile(double t, std::span<const NormalSpec> specs) {
    if (specs.empty()) throw std::invalid_argument("max_quantile needs at least one spec");
    return grouped_quantile(t, GroupedSpecs(specs));
}

double quantile_shift_derivative(double t, std::span<const NormalSpec> specs,
                                 std::size_t shifted_index) {
    if (shifted_index >= specs.size()) throw std::invalid_argument("shifted_index out of range");
    const double z = max_quantile(t, specs);
    double total = 0.0;
    double shifted = 0.0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const double u = (z - specs[i].mean) / specs[i].sigma;
        const double r = norm_pdf_over_cdf(u) / specs[i].sigma;
        total += r;
        if (i == shifted_index) shifted = r;
    }
    return shifted / total;
}

DispersiveReport dispersive_check(const std::function<double(double)>& q_x,
                                  const std::function<double(double)>& q_y,
                                  std::span<const std::pair<double, double>> pairs,
                                  double slack) {
    if (pairs.empty()) throw std::invalid_argument("dispersive_check needs pairs");
    DispersiveReport report{true, std::numeric_limits<double>::infinity()};
    for (const auto& [a, b] : pairs) {
        if (!(0.0 < a && a <= b && b < 1.0))
            throw std::invalid_argument("dispersive_check pairs need 0 < a <= b < 1");
        const double margin = (q_y(b) - q_y(a)) - (q_x(b) - q_x(a));
        report.worst_margin = std::min(report.worst_margin, margin);
    }
    report.less_dispersed = report.worst_margin >= -slack;
    return report;
}

FluctIntervalResult fluct_interval(std::span<const NormalSpec> specs, double c_target) {
    if (specs.empty()) throw std::invalid_argument("fluct_interval needs specs");
    if (!(c_target > 0.0 && c_target <= 0.5))
        throw std::invalid_argument("c_target must lie in (0, 1/2]");
    const GroupedSpecs grouped(specs);
    double sigma_min = std::numeric_limits<double>::infinity();
    for (const auto& s : grouped.unique) sigma_min = std::min(sigma_min, s.sigma);
    const double width =
        sigma_min / std::sqrt(1.0 + std::log(static_cast<double>(specs.size())));

    FluctIntervalResult result;
    result.best_min_tail = 0.0;
    for (int i = 0; i <= 196; ++i) {
        const double t = 0.01 + 0.005 * i;
        const double a = grouped_quantile(t, grouped);
        const double left = grouped.cdf(a);
        const double right = 1.0 - grouped.cdf(a + width);
        const double min_tail = std::min(left, right);
        if (min_tail > result.best_min_tail) result.best_min_tail = min_tail;
        if (left >= c_target && right >= c_target) {
            result.found = true;
            result.interval = FluctuationInterval{a, a + width, std::min(min_tail, 0.5)};
            return result;
        }
    }
    return result;
}

}  // namespace fpp
