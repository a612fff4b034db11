#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "fppsim/gaussmax.hpp"
#include "fppsim/stats.hpp"

namespace fpp {

struct ExperimentConfig {
    std::string kind;
    std::string geometry = "tube";  // simulate: square | tube | torus | cylinder
    std::vector<int> ns = {16, 32, 64};
    int replicas = 1000;
    int K = -1;                     // cylinder height (growth experiments)
    double alpha1 = 0.8;            // confinement exponent, in (3/4, 1)
    double alpha2 = 0.8;            // partition exponent, in (3/4, 1)
    double c = 0.2;                 // spread quantile level, in (0, 1/2)
    std::uint64_t seed = 1;
    std::string out;                // output path prefix ("" = stdout)
    int workers = 0;                // 0 = hardware concurrency
    double window_factor = 1.0;
    std::vector<double> moment_orders = {2.0, 4.0, 8.0, 13.0};
    double quantile_level = 1e-3;   // calibrate-a

    void validate() const;
};

/// Tabular result: fixed column order, one row per (n[, k]) cell, plus a
/// JSON metadata blob (config echo, seed, version, wall time). The CSV body
/// carries no metadata so reruns are byte-comparable.
struct ExperimentReport {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string metadata_json;

    std::string csv_body() const;
    std::string json_body() const;
};

/// Worker pool over replica indices. fn(i) must only write state owned by
/// index i; scheduling order never affects results.
void parallel_for_index(int count, int workers, const std::function<void(int)>& fn);

/// Definition-style two-sided spread estimate: a_n is the empirical
/// c-quantile, b_n the empirical (1-c)-quantile, so both tail conditions
/// hold on the empirical law by construction.
FluctuationInterval fluctuation_estimate(std::span<const double> samples, double c);

/// Partition of n into blocks K^(1..r) with every block in
/// [n^alpha2, 2 n^alpha2] and sum n; the remainder is spread evenly so the
/// lower bound cannot be violated by a final short block.
std::vector<int> partition_heights(int n, double alpha2);

ExperimentReport simulate_experiment(const ExperimentConfig& config);
ExperimentReport confinement_experiment(const ExperimentConfig& config);
ExperimentReport min_cylinder_experiment(const ExperimentConfig& config);
ExperimentReport torus_moment_experiment(const ExperimentConfig& config);
ExperimentReport growth_vs_dijkstra(const ExperimentConfig& config);

struct OrderingCheck {
    int replicas = 0;
    int tube_gt_min_cylinder = 0;       // violations of T_tube <= min(T, T')
    int torus_lt_tube = 0;              // violations of T_tor >= T_tube
    int restricted_gt_square = 0;       // violations of min_i T_n(i) <= T_sq
    int tube_gt_restricted1 = 0;        // violations of T_tube <= T_n(1)
};

/// Per-sample ordering identities on coupled weights at one n.
OrderingCheck ordering_check(int n, int replicas, std::uint64_t seed, double alpha2,
                             int workers = 0);

struct ExponentFit {
    LinearFit fit;
    int excluded_rows = 0;  // rows dropped for nonpositive spread
};

/// Log-log least squares of spread against n.
ExponentFit exponent_fit(std::span<const double> ns, std::span<const double> spreads);

struct SlopeCI {
    double slope = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};

/// Bootstrap confidence interval for the log-log spread slope, resampling
/// within each n-level.
SlopeCI bootstrap_slope_ci(const std::vector<std::vector<double>>& samples_per_n,
                           std::span<const double> ns, double c, int resamples,
                           std::uint64_t seed);

/// Tube passage-time samples for one n (parallel, deterministic in seed).
std::vector<double> tube_time_samples(int n, int replicas, std::uint64_t seed, int workers);

}  // namespace fpp
