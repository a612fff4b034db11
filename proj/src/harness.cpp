#include "fppsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "fppsim/env.hpp"
#include "fppsim/growth.hpp"
#include "fppsim/passage.hpp"
#include "fppsim/version.hpp"

namespace fpp {
namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::json config_echo(const ExperimentConfig& c) {
    nlohmann::json j;
    j["kind"] = c.kind;
    j["geometry"] = c.geometry;
    j["ns"] = c.ns;
    j["replicas"] = c.replicas;
    j["K"] = c.K;
    j["alpha1"] = c.alpha1;
    j["alpha2"] = c.alpha2;
    j["c"] = c.c;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    j["window_factor"] = c.window_factor;
    j["moment_orders"] = c.moment_orders;
    j["quantile_level"] = c.quantile_level;
    return j;
}

class MetadataTimer {
  public:
    explicit MetadataTimer(const ExperimentConfig& config)
        : config_(config), start_(std::chrono::steady_clock::now()) {}

    std::string finish() const {
        nlohmann::json j;
        j["config"] = config_echo(config_);
        j["seed"] = config_.seed;
        j["version"] = std::string("fppsim-") + kVersion;
        j["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return j.dump();
    }

  private:
    ExperimentConfig config_;
    std::chrono::steady_clock::time_point start_;
};

std::uint64_t per_n_seed(std::uint64_t master, int n) {
    return hash2(master ^ 0x51C6B8D3A07E92F1ull, static_cast<std::uint64_t>(n));
}

double spread_of(std::vector<double> samples, double c) {
    std::sort(samples.begin(), samples.end());
    return upper_quantile_sorted(samples, c) - lower_quantile_sorted(samples, c);
}

}  // namespace

void ExperimentConfig::validate() const {
    if (replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    if (!(c > 0.0 && c < 0.5)) throw std::invalid_argument("c must lie in (0, 1/2)");
    if (ns.empty()) throw std::invalid_argument("n list must be nonempty");
    for (int n : ns)
        if (n < 1) throw std::invalid_argument("n values must be >= 1");
    if (workers < 0) throw std::invalid_argument("workers must be >= 0");
    if (kind == "confinement" && !(alpha1 > 0.75 && alpha1 < 1.0))
        throw std::invalid_argument("confinement requires alpha1 in (3/4, 1)");
    if (kind == "min-cyl" && !(alpha2 > 0.75 && alpha2 < 1.0))
        throw std::invalid_argument("min-cyl requires alpha2 in (3/4, 1)");
}

std::string ExperimentReport::csv_body() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
        out << "\n";
    }
    return out.str();
}

std::string ExperimentReport::json_body() const {
    nlohmann::json j;
    j["metadata"] = metadata_json.empty() ? nlohmann::json::object()
                                          : nlohmann::json::parse(metadata_json);
    j["columns"] = columns;
    j["rows"] = rows;
    return j.dump(2);
}

void parallel_for_index(int count, int workers, const std::function<void(int)>& fn) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    workers = std::min(workers, count);
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

FluctuationInterval fluctuation_estimate(std::span<const double> samples, double c) {
    if (samples.size() < 100) throw std::invalid_argument("fluctuation_estimate needs >= 100 samples");
    if (!(c > 0.0 && c < 0.5)) throw std::invalid_argument("c must lie in (0, 1/2)");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    FluctuationInterval interval;
    interval.a_n = lower_quantile_sorted(sorted, c);
    interval.b_n = upper_quantile_sorted(sorted, c);
    interval.c = c;
    return interval;
}

std::vector<int> partition_heights(int n, double alpha2) {
    if (n < 1) throw std::invalid_argument("partition_heights needs n >= 1");
    if (!(alpha2 > 0.0 && alpha2 < 1.0))
        throw std::invalid_argument("partition_heights needs alpha2 in (0,1)");
    const double lo = std::pow(static_cast<double>(n), alpha2);
    const double hi = 2.0 * lo;
    for (int r = std::max(1, static_cast<int>(std::floor(n / lo))); r >= 1; --r) {
        const int base = n / r;
        const int rem = n % r;
        const int smallest = base;
        const int largest = rem > 0 ? base + 1 : base;
        if (smallest >= lo && largest <= hi) {
            std::vector<int> blocks;
            blocks.reserve(r);
            for (int j = 0; j < r - rem; ++j) blocks.push_back(base);
            for (int j = 0; j < rem; ++j) blocks.push_back(base + 1);
            return blocks;
        }
    }
    throw std::invalid_argument("no feasible block partition for (n, alpha2)");
}

ExperimentReport simulate_experiment(const ExperimentConfig& config) {
    config.validate();
    MetadataTimer timer(config);
    WeightMode mode;
    if (config.geometry == "square" || config.geometry == "cylinder")
        mode = WeightMode::IID;
    else if (config.geometry == "tube" || config.geometry == "torus")
        mode = WeightMode::Periodic;
    else
        throw std::invalid_argument("unknown geometry: " + config.geometry);
    if (config.geometry == "cylinder" && config.K < 0)
        throw std::invalid_argument("cylinder geometry needs K");

    ExperimentReport report;
    report.columns = {"n", "replicas", "c", "mean", "q_low", "q_high", "spread"};
    for (int n : config.ns) {
        std::vector<double> times(config.replicas);
        const std::uint64_t base = per_n_seed(config.seed, n);
        parallel_for_index(config.replicas, config.workers, [&](int i) {
            const Environment env(mode, n, derive_seed(base, static_cast<std::uint64_t>(i)));
            if (config.geometry == "square")
                times[i] = square_time(env, n).time;
            else if (config.geometry == "tube")
                times[i] = tube_time(env, n).time;
            else if (config.geometry == "torus")
                times[i] = torus_time(env, n, config.window_factor).time;
            else
                times[i] = cylinder_time(env, n, config.K).time;
        });
        const double m = mean(times);
        std::vector<double> sorted = times;
        std::sort(sorted.begin(), sorted.end());
        const double q_low = lower_quantile_sorted(sorted, config.c);
        const double q_high = upper_quantile_sorted(sorted, config.c);
        report.rows.push_back({static_cast<double>(n), static_cast<double>(config.replicas),
                               config.c, m, q_low, q_high, q_high - q_low});
    }
    report.metadata_json = timer.finish();
    return report;
}

ExperimentReport confinement_experiment(const ExperimentConfig& config) {
    config.validate();
    if (!(config.alpha1 > 0.75 && config.alpha1 < 1.0))
        throw std::invalid_argument("confinement requires alpha1 in (3/4, 1)");
    MetadataTimer timer(config);
    ExperimentReport report;
    report.columns = {"n", "replicas", "alpha", "threshold", "freq", "mean_span", "se"};
    for (int n : config.ns) {
        const double threshold = std::pow(static_cast<double>(n), config.alpha1);
        std::vector<double> spans(config.replicas);
        const std::uint64_t base = per_n_seed(config.seed, n);
        parallel_for_index(config.replicas, config.workers, [&](int i) {
            const Environment env(WeightMode::Periodic, n,
                                  derive_seed(base, static_cast<std::uint64_t>(i)));
            spans[i] = vertical_span(tube_time(env, n)).vertical_span;
        });
        int inside = 0;
        for (double s : spans)
            if (s <= threshold) ++inside;
        const double freq = static_cast<double>(inside) / config.replicas;
        const double se = std::sqrt(freq * (1.0 - freq) / config.replicas);
        report.rows.push_back({static_cast<double>(n), static_cast<double>(config.replicas),
                               config.alpha1, threshold, freq, mean(spans), se});
    }
    report.metadata_json = timer.finish();
    return report;
}

namespace {

struct StackTimes {
    double plain;    // min over the stacked cylinders
    double shifted;  // min over the stack moved up by floor(n^alpha2 / 2)
};

StackTimes stacked_cylinder_times(const Environment& env, int n,
                                  const std::vector<int>& blocks, int shift) {
    StackTimes t{std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity()};
    int offset = 0;
    for (int height : blocks) {
        t.plain = std::min(t.plain, cylinder_time(env, n, height - 1, offset).time);
        t.shifted = std::min(t.shifted, cylinder_time(env, n, height - 1, offset + shift).time);
        offset += height;
    }
    return t;
}

}  // namespace

ExperimentReport min_cylinder_experiment(const ExperimentConfig& config) {
    config.validate();
    if (!(config.alpha2 > 0.75 && config.alpha2 < 1.0))
        throw std::invalid_argument("min-cyl requires alpha2 in (3/4, 1)");
    MetadataTimer timer(config);
    ExperimentReport report;
    report.columns = {"n",           "replicas",       "blocks",      "shift",
                      "freq_equal",  "violations",     "spread_tube", "spread_min_cyl",
                      "ks_T_Tprime", "sum_inv_sqrt_k", "c"};
    for (int n : config.ns) {
        const auto blocks = partition_heights(n, config.alpha2);
        const int shift =
            static_cast<int>(std::floor(std::pow(static_cast<double>(n), config.alpha2) / 2.0));
        // reported diagnostic: (1/sqrt(n)) * sum_j 1/sqrt(K_j); small values
        // are what make the independent-cylinder coupling effective
        double sum_inv_sqrt_k = 0.0;
        for (int height : blocks) sum_inv_sqrt_k += 1.0 / std::sqrt(static_cast<double>(height));
        sum_inv_sqrt_k /= std::sqrt(static_cast<double>(n));
        std::vector<double> tube(config.replicas), tmin(config.replicas),
            tplain(config.replicas), tshift(config.replicas);
        const std::uint64_t base = per_n_seed(config.seed, n);
        parallel_for_index(config.replicas, config.workers, [&](int i) {
            const Environment env(WeightMode::Periodic, n,
                                  derive_seed(base, static_cast<std::uint64_t>(i)));
            const StackTimes st = stacked_cylinder_times(env, n, blocks, shift);
            tplain[i] = st.plain;
            tshift[i] = st.shifted;
            tmin[i] = std::min(st.plain, st.shifted);
            tube[i] = tube_time(env, n).time;
        });
        int equal = 0, violations = 0;
        for (int i = 0; i < config.replicas; ++i) {
            const double tol = 1e-9 * (1.0 + std::abs(tmin[i]));
            if (tube[i] > tmin[i] + tol) ++violations;
            if (std::abs(tube[i] - tmin[i]) <= tol) ++equal;
        }
        report.rows.push_back({static_cast<double>(n), static_cast<double>(config.replicas),
                               static_cast<double>(blocks.size()), static_cast<double>(shift),
                               static_cast<double>(equal) / config.replicas,
                               static_cast<double>(violations), spread_of(tube, config.c),
                               spread_of(tmin, config.c), ks_two_sample(tplain, tshift),
                               sum_inv_sqrt_k, config.c});
    }
    report.metadata_json = timer.finish();
    return report;
}

ExperimentReport torus_moment_experiment(const ExperimentConfig& config) {
    config.validate();
    MetadataTimer timer(config);
    ExperimentReport report;
    report.columns = {"n", "k", "replicas", "moment", "bootstrap_se"};
    for (int n : config.ns) {
        std::vector<double> times(config.replicas);
        const std::uint64_t base = per_n_seed(config.seed, n);
        parallel_for_index(config.replicas, config.workers, [&](int i) {
            const Environment env(WeightMode::Periodic, n,
                                  derive_seed(base, static_cast<std::uint64_t>(i)));
            times[i] = torus_time(env, n, config.window_factor).time;
        });
        Rng boot(hash2(base, 0xB007ull));
        constexpr int kResamples = 200;
        for (double k : config.moment_orders) {
            const double moment = central_abs_moment(times, k);
            std::vector<double> resampled(kResamples);
            for (int b = 0; b < kResamples; ++b)
                resampled[b] = central_abs_moment(bootstrap_resample(times, boot), k);
            const double se = std::sqrt(variance(resampled));
            report.rows.push_back({static_cast<double>(n), k,
                                   static_cast<double>(config.replicas), moment, se});
        }
    }
    report.metadata_json = timer.finish();
    return report;
}

ExperimentReport growth_vs_dijkstra(const ExperimentConfig& config) {
    config.validate();
    if (config.K < 0) throw std::invalid_argument("growth experiments need K >= 0");
    MetadataTimer timer(config);
    ExperimentReport report;
    report.columns = {"n",       "K",          "replicas",    "ks_time", "ks_hitting",
                      "mean_dijkstra", "mean_growth", "se_combined"};
    for (int n : config.ns) {
        const int K = config.K;
        if (K > n - 1) throw std::invalid_argument("growth experiments need K <= n-1");
        std::vector<double> dijkstra_times(config.replicas), growth_times(config.replicas);
        std::vector<double> hit_counts(config.replicas), hit_indices(config.replicas);
        const std::uint64_t base = per_n_seed(config.seed, n);
        parallel_for_index(config.replicas, config.workers, [&](int i) {
            const std::uint64_t s = derive_seed(base, static_cast<std::uint64_t>(i));
            const Environment env(WeightMode::IID, n, s);
            dijkstra_times[i] = cylinder_time(env, n, K).time;
            hit_counts[i] = hitting_count_check(env, n, K);
            Rng rng(hash2(s, 0x6207ull));
            const GrowthTrace trace = grow(n, K, rng);
            hit_indices[i] = trace.hitting_index;
            growth_times[i] = sample_time(trace, rng);
        });
        const double m_d = mean(dijkstra_times);
        const double m_g = mean(growth_times);
        const double se = std::sqrt(variance(dijkstra_times) / config.replicas +
                                    variance(growth_times) / config.replicas);
        report.rows.push_back({static_cast<double>(n), static_cast<double>(K),
                               static_cast<double>(config.replicas),
                               ks_two_sample(dijkstra_times, growth_times),
                               ks_two_sample(hit_indices, hit_counts), m_d, m_g, se});
    }
    report.metadata_json = timer.finish();
    return report;
}

OrderingCheck ordering_check(int n, int replicas, std::uint64_t seed, double alpha2,
                             int workers) {
    const auto blocks = partition_heights(n, alpha2);
    const int shift =
        static_cast<int>(std::floor(std::pow(static_cast<double>(n), alpha2) / 2.0));
    std::vector<std::uint8_t> v_tube_min(replicas, 0), v_torus(replicas, 0),
        v_square(replicas, 0), v_restricted(replicas, 0);
    const std::uint64_t base = per_n_seed(seed, n);
    parallel_for_index(replicas, workers, [&](int i) {
        const CoupledEnvironment coupled = couple(n, derive_seed(base, static_cast<std::uint64_t>(i)));
        const double square = square_time(coupled.iid, n).time;
        const double t1 = square_time_restricted(coupled.iid, n, SquareVariant::LeftRightNoTop).time;
        const double t2 =
            square_time_restricted(coupled.iid, n, SquareVariant::LeftRightNoBottom).time;
        const double t3 =
            square_time_restricted(coupled.iid, n, SquareVariant::BottomTopNoRight).time;
        const double tube = tube_time(coupled.periodic, n).time;
        const double torus = torus_time(coupled.periodic, n).time;
        const StackTimes st = stacked_cylinder_times(coupled.periodic, n, blocks, shift);
        const double tmin = std::min(st.plain, st.shifted);
        const double tol = 1e-9;
        if (tube > tmin + tol * (1.0 + tmin)) v_tube_min[i] = 1;
        if (torus < tube - tol * (1.0 + tube)) v_torus[i] = 1;
        if (std::min({t1, t2, t3}) > square + tol * (1.0 + square)) v_square[i] = 1;
        if (tube > t1 + tol * (1.0 + t1)) v_restricted[i] = 1;
    });
    OrderingCheck check;
    check.replicas = replicas;
    for (int i = 0; i < replicas; ++i) {
        check.tube_gt_min_cylinder += v_tube_min[i];
        check.torus_lt_tube += v_torus[i];
        check.restricted_gt_square += v_square[i];
        check.tube_gt_restricted1 += v_restricted[i];
    }
    return check;
}

ExponentFit exponent_fit(std::span<const double> ns, std::span<const double> spreads) {
    if (ns.size() != spreads.size()) throw std::invalid_argument("mismatched fit rows");
    std::vector<double> lx, ly;
    int excluded = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (spreads[i] <= 0.0) {
            ++excluded;
            continue;
        }
        lx.push_back(std::log(ns[i]));
        ly.push_back(std::log(spreads[i]));
    }
    if (lx.size() < 3) throw std::invalid_argument("exponent_fit needs >= 3 positive-spread rows");
    return ExponentFit{least_squares(lx, ly), excluded};
}

SlopeCI bootstrap_slope_ci(const std::vector<std::vector<double>>& samples_per_n,
                           std::span<const double> ns, double c, int resamples,
                           std::uint64_t seed) {
    if (samples_per_n.size() != ns.size()) throw std::invalid_argument("mismatched levels");
    std::vector<double> spreads;
    for (const auto& samples : samples_per_n) spreads.push_back(spread_of(samples, c));
    const ExponentFit point = exponent_fit(ns, spreads);

    Rng rng(hash2(seed, 0xB00Cull));
    std::vector<double> slopes(resamples);
    for (int b = 0; b < resamples; ++b) {
        std::vector<double> s;
        for (const auto& samples : samples_per_n)
            s.push_back(spread_of(bootstrap_resample(samples, rng), c));
        slopes[b] = exponent_fit(ns, s).fit.slope;
    }
    std::sort(slopes.begin(), slopes.end());
    SlopeCI ci;
    ci.slope = point.fit.slope;
    ci.lo = lower_quantile_sorted(slopes, 0.025);
    ci.hi = upper_quantile_sorted(slopes, 0.025);
    return ci;
}

std::vector<double> tube_time_samples(int n, int replicas, std::uint64_t seed, int workers) {
    std::vector<double> times(replicas);
    const std::uint64_t base = per_n_seed(seed, n);
    parallel_for_index(replicas, workers, [&](int i) {
        const Environment env(WeightMode::Periodic, n,
                              derive_seed(base, static_cast<std::uint64_t>(i)));
        times[i] = tube_time(env, n).time;
    });
    return times;
}

}  // namespace fpp
