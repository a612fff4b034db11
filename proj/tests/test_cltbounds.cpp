#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fppsim/cltbounds.hpp"
#include "fppsim/growth.hpp"
#include "fppsim/rng.hpp"
#include "test_util.hpp"

using namespace fpp;

namespace {
constexpr double kLog2Pi = 1.8378770664093454835606594728112;
}

TEST_CASE("exponential entropy closed form against quadrature") {
    CHECK(entropy_exponential(1.0) == 1.0);
    CHECK(entropy_exponential(std::exp(1.0)) == doctest::Approx(0.0).epsilon(1e-14));
    for (double lambda : {0.5, 2.0, 3.7}) {
        const double numeric = testutil::adaptive_simpson(
            [lambda](double x) {
                const double f = lambda * std::exp(-lambda * x);
                return f <= 0.0 ? 0.0 : -f * std::log(f);
            },
            1e-12, 80.0 / lambda, 1e-10);
        CHECK(std::abs(entropy_exponential(lambda) - numeric) < 1e-6);
    }
    CHECK_THROWS_AS(entropy_exponential(0.0), std::invalid_argument);
    CHECK_THROWS_AS(entropy_exponential(-1.0), std::invalid_argument);
}

TEST_CASE("gaussian entropy closed form against quadrature") {
    const double numeric = testutil::adaptive_simpson(
        [](double x) {
            const double f = std::exp(-0.5 * x * x) / std::sqrt(2.0 * 3.14159265358979323846);
            return -f * std::log(f);
        },
        -12.0, 12.0, 1e-12);
    CHECK(std::abs(entropy_gaussian() - numeric) < 1e-8);
    CHECK(entropy_gaussian() == doctest::Approx((kLog2Pi + 1.0) / 2.0).epsilon(1e-15));
    CHECK(entropy_gaussian() - entropy_exponential(1.0) ==
          doctest::Approx((kLog2Pi - 1.0) / 2.0).epsilon(1e-14));
    CHECK(entropy_gaussian() > entropy_exponential(1.0));
}

TEST_CASE("standardized coefficients are unit in l2") {
    const auto equal = standardized_coefficients(std::vector<int>{2, 2, 2, 2});
    for (double a : equal) CHECK(a == doctest::Approx(0.5).epsilon(1e-15));
    const auto single = standardized_coefficients(std::vector<int>{1});
    CHECK(single.size() == 1);
    CHECK(single[0] == doctest::Approx(1.0).epsilon(1e-15));

    Rng rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<int> d(1 + rng.below(40));
        for (int& di : d) di = 1 + static_cast<int>(rng.below(50));
        double s2 = 0.0;
        for (double a : standardized_coefficients(d)) s2 += a * a;
        CHECK(s2 == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(standardized_coefficients(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(standardized_coefficients(std::vector<int>{0}), std::invalid_argument);
}

TEST_CASE("tv bound: single-term value and closed form for equal sizes") {
    CHECK(tv_bound({{1}, 0.25}) == doctest::Approx(std::sqrt(kLog2Pi - 1.0)).epsilon(1e-12));

    double previous = std::numeric_limits<double>::infinity();
    for (int M : {1, 2, 5, 20, 100}) {
        const double closed =
            std::sqrt((kLog2Pi - 1.0) / (0.125 * M + 1.0 - 0.125));
        const double bound = tv_bound({std::vector<int>(M, 7), 0.25});
        CHECK(bound == doctest::Approx(closed).epsilon(1e-12));
        CHECK(bound < previous);
        previous = bound;
    }
}

TEST_CASE("tv bound monotonicity in the coefficient spread") {
    // Scale invariance: the coefficients only see ratios.
    Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<int> d(2 + rng.below(30));
        for (int& di : d) di = 1 + static_cast<int>(rng.below(20));
        std::vector<int> scaled = d;
        for (int& di : scaled) di *= 3;
        CHECK(tv_bound({scaled, 0.25}) == doctest::Approx(tv_bound({d, 0.25})).epsilon(1e-12));
    }
    // Raising a below-average boundary size towards the common value evens
    // out the coefficients and can only lower the bound. (Raising a size
    // *above* the common value concentrates the remaining coefficients and
    // raises the bound instead: [1,1] -> [1,2] is a counterexample to
    // monotonicity in each coordinate separately.)
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 5 + static_cast<int>(rng.below(20));
        std::vector<int> d(2 + rng.below(30), m);
        const std::size_t k = rng.below(d.size());
        d[k] = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - 1)));
        double previous = tv_bound({d, 0.25});
        while (d[k] < m) {
            ++d[k];
            const double current = tv_bound({d, 0.25});
            CHECK(current <= previous + 1e-12);
            previous = current;
        }
    }
    CHECK(tv_bound({{1, 2}, 0.25}) > tv_bound({{1, 1}, 0.25}));
}

TEST_CASE("tv bound dominates a Monte Carlo histogram distance") {
    const std::vector<int> d(50, 3);
    const auto a = standardized_coefficients(d);
    double mu = 0.0;
    for (int di : d) mu += 1.0 / di;
    double sigma2 = 0.0;
    for (int di : d) sigma2 += 1.0 / (static_cast<double>(di) * di);
    const double sigma = std::sqrt(sigma2);

    Rng rng(3);
    std::vector<double> samples(1000000);
    for (double& s : samples) {
        double sum = 0.0;
        for (int di : d) sum += rng.exponential() / di;
        s = (sum - mu) / sigma;
    }
    const double observed = empirical_tv(samples, 100);
    CHECK(observed <= tv_bound({d, 0.25}));
}

TEST_CASE("coupling bound algebra") {
    const double b1 = coupling_bound(64, 8, 0.4);
    const double b2 = coupling_bound(128, 8, 0.4);
    CHECK(b1 * b1 == doctest::Approx(2.0 * b2 * b2).epsilon(1e-12));
    // defining identity: bound^2 * a^8 * n * (K+1) = (log 2pi - 1) * 2^15
    for (auto [n, K, a] : {std::tuple{10, 1, 0.3}, {200, 9, 0.55}, {27456, 0, 1.0}}) {
        const double b = coupling_bound(n, K, a);
        CHECK(b * b * std::pow(a, 8.0) * n * (K + 1) ==
              doctest::Approx((kLog2Pi - 1.0) * 32768.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(coupling_bound(0, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(coupling_bound(10, 1, 0.0), std::invalid_argument);
}

TEST_CASE("empirical tv: self-consistency, point mass, and mean shift") {
    Rng rng(4);
    std::vector<double> normal(1000000);
    for (double& x : normal) x = rng.normal();
    CHECK(empirical_tv(normal, 100) < 0.01);

    const std::vector<double> point(10000, 0.0);
    CHECK(empirical_tv(point, 100) >= 0.9);

    std::vector<double> shifted(100000);
    for (double& x : shifted) x = rng.normal() + 1.0;
    CHECK(empirical_tv(shifted, 100) >= 0.3);

    CHECK_THROWS_AS(empirical_tv(std::vector<double>(100, 0.0), 100), std::invalid_argument);
    CHECK_THROWS_AS(empirical_tv(normal, 10), std::invalid_argument);
}

TEST_CASE("standardized conditional growth sums stay within the tv bound") {
    Rng rng(5);
    const GrowthTrace t = grow(64, 8, rng);
    const CylinderMoments m = trace_moments(t);
    std::vector<double> samples(100000);
    for (double& s : samples) s = (sample_time(t, rng) - m.mu) / m.sigma;
    const std::vector<int> b(t.b.begin(), t.b.begin() + t.hitting_index);
    CHECK(empirical_tv(samples, 100) <= tv_bound({b, 0.25}));
}
