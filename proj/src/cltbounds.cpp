#include "fppsim/cltbounds.hpp"

#include <cmath>
#include <stdexcept>

#include "fppsim/gaussmax.hpp"

namespace fpp {

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

double entropy_exponential(double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("entropy_exponential needs lambda > 0");
    return 1.0 - std::log(lambda);
}

double entropy_gaussian() { return 0.5 * (kLog2Pi + 1.0); }

std::vector<double> standardized_coefficients(std::span<const int> d) {
    if (d.empty()) throw std::invalid_argument("standardized_coefficients needs nonempty d");
    double s2 = 0.0;
    for (int di : d) {
        if (di < 1) throw std::invalid_argument("boundary sizes must be >= 1");
        s2 += 1.0 / (static_cast<double>(di) * di);
    }
    const double norm = std::sqrt(s2);
    std::vector<double> a(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) a[i] = 1.0 / (d[i] * norm);
    return a;
}

double tv_bound(const TVBoundInput& input) {
    if (input.c_poincare <= 0.0) throw std::invalid_argument("Poincare constant must be positive");
    const auto a = standardized_coefficients(input.d);
    double s4 = 0.0;
    for (double ai : a) s4 += ai * ai * ai * ai;
    const double entropy_gap = entropy_gaussian() - entropy_exponential(1.0);  // (log 2pi - 1)/2
    const double c = input.c_poincare;
    const double squared = 2.0 * s4 / (c / 2.0 + (1.0 - c / 2.0) * s4) * entropy_gap;
    return std::sqrt(squared);
}

double coupling_bound(int n, int K, double a_hat) {
    if (n < 1 || K < 0 || a_hat <= 0.0)
        throw std::invalid_argument("coupling_bound needs n >= 1, K >= 0, a_hat > 0");
    const double a8 = std::pow(a_hat, 8.0);
    return std::sqrt((kLog2Pi - 1.0) * 32768.0 / (a8 * n * (K + 1.0)));
}

double empirical_tv(std::span<const double> samples, int bins) {
    if (samples.size() < 10000) throw std::invalid_argument("empirical_tv needs >= 1e4 samples");
    if (bins < 50) throw std::invalid_argument("empirical_tv needs >= 50 bins");
    constexpr double lo = -6.0, hi = 6.0;
    const double width = (hi - lo) / bins;
    std::vector<double> counts(static_cast<std::size_t>(bins) + 2, 0.0);
    for (double x : samples) {
        if (x < lo)
            counts.front() += 1.0;
        else if (x >= hi)
            counts.back() += 1.0;
        else
            counts[1 + static_cast<std::size_t>((x - lo) / width)] += 1.0;
    }
    const double n = static_cast<double>(samples.size());
    double tv = std::abs(counts.front() / n - norm_cdf(lo));
    tv += std::abs(counts.back() / n - (1.0 - norm_cdf(hi)));
    for (int k = 0; k < bins; ++k) {
        const double mass = norm_cdf(lo + (k + 1) * width) - norm_cdf(lo + k * width);
        tv += std::abs(counts[1 + static_cast<std::size_t>(k)] / n - mass);
    }
    return 0.5 * tv;
}

}  // namespace fpp
