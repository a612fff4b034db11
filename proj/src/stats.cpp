#include "fppsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fpp {

double lower_quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
    if (q < 0.0 || q >= 1.0) throw std::invalid_argument("quantile level must lie in [0,1)");
    const std::size_t n = sorted.size();
    std::size_t k = static_cast<std::size_t>(std::floor(q * static_cast<double>(n)));
    if (k >= n) k = n - 1;
    return sorted[k];
}

double upper_quantile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
    if (q < 0.0 || q >= 1.0) throw std::invalid_argument("quantile level must lie in [0,1)");
    const std::size_t n = sorted.size();
    std::size_t k = static_cast<std::size_t>(std::floor(q * static_cast<double>(n)));
    if (k >= n) k = n - 1;
    return sorted[n - 1 - k];
}

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean of empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size());
}

double central_abs_moment(std::span<const double> xs, double k) {
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += std::pow(std::abs(x - m), k);
    return s / static_cast<double>(xs.size());
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample needs nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return std::max(d, 1.0 - static_cast<double>(std::min(i / na, j / nb)));
}

double ks_vs_cdf(std::vector<double> xs, const std::function<double(double)>& cdf) {
    if (xs.empty()) throw std::invalid_argument("ks_vs_cdf needs a nonempty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares needs >= 2 matched points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("least_squares needs distinct x values");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    fit.residuals.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
        sse += fit.residuals[i] * fit.residuals[i];
    }
    fit.r2 = syy == 0.0 ? 1.0 : 1.0 - sse / syy;
    return fit;
}

std::vector<double> bootstrap_resample(std::span<const double> xs, Rng& rng) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = xs[rng.below(xs.size())];
    return out;
}

}  // namespace fpp
