#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fppsim/cltbounds.hpp"
#include "fppsim/env.hpp"
#include "fppsim/gaussmax.hpp"
#include "fppsim/growth.hpp"
#include "fppsim/harness.hpp"
#include "fppsim/passage.hpp"
#include "fppsim/version.hpp"

namespace {

std::uint64_t parse_seed(const std::string& text) {
    if (text.rfind("0x", 0) == 0 || text.rfind("0X", 0) == 0)
        return std::stoull(text.substr(2), nullptr, 16);
    return std::stoull(text, nullptr, 10);
}

void emit_report(const fpp::ExperimentReport& report, const std::string& out,
                 bool json_to_stdout = false) {
    if (out.empty()) {
        std::cout << (json_to_stdout ? report.json_body() : report.csv_body());
        return;
    }
    std::ofstream csv(out + ".csv");
    if (!csv) throw std::invalid_argument("cannot open output file " + out + ".csv");
    csv << report.csv_body();
    std::ofstream json(out + ".json");
    if (!json) throw std::invalid_argument("cannot open output file " + out + ".json");
    json << report.json_body();
}

struct CommonOpts {
    std::string seed_text = "1";
    std::string out;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed_text, "master seed (decimal or 0x-hex)");
    cmd->add_option("--out", opts.out, "output path prefix (writes PREFIX.csv and PREFIX.json)");
    cmd->add_option("--workers", opts.workers, "worker threads (0 = hardware)");
}

fpp::ExperimentReport gauss_check_report(std::uint64_t seed) {
    fpp::ExperimentConfig config;
    config.kind = "gauss-check";
    config.seed = seed;

    const auto cert = fpp::logconcavity_certificate(-10.0, 10.0, 1e-3);
    const double f0 = 0.25 - 1.0 / (2.0 * 3.14159265358979323846);

    // Quantile-derivative formula against a central finite difference on
    // randomized instances (n <= 6).
    fpp::Rng rng(fpp::hash2(seed, 0x6A55ull));
    double max_fd_error = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(6));
        std::vector<fpp::NormalSpec> specs(n);
        for (auto& s : specs) s = {4.0 * rng.uniform01() - 2.0, 0.5 + 2.0 * rng.uniform01()};
        const double t = 0.05 + 0.9 * rng.uniform01();
        const std::size_t k = rng.below(n);
        const double formula = fpp::quantile_shift_derivative(t, specs, k);
        const double h = 1e-5;
        auto shifted = specs;
        shifted[k].mean += h;
        const double up = fpp::max_quantile(t, shifted);
        shifted[k].mean -= 2.0 * h;
        const double down = fpp::max_quantile(t, shifted);
        max_fd_error = std::max(max_fd_error, std::abs(formula - (up - down) / (2.0 * h)));
    }

    // Dispersive order of max of 4 i.i.d. normals against shifted versions.
    std::vector<fpp::NormalSpec> iid4(4);
    double worst_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<fpp::NormalSpec> shifted(4);
        for (auto& s : shifted) s = {3.0 * rng.uniform01(), 1.0};
        std::vector<std::pair<double, double>> pairs;
        for (int i = 0; i < 50; ++i) {
            double a = 0.02 + 0.96 * rng.uniform01();
            double b = 0.02 + 0.96 * rng.uniform01();
            if (b < a) std::swap(a, b);
            pairs.emplace_back(a, b);
        }
        const auto rep = fpp::dispersive_check(
            [&](double t) { return fpp::max_quantile(t, iid4); },
            [&](double t) { return fpp::max_quantile(t, shifted); }, pairs);
        worst_margin = std::min(worst_margin, rep.worst_margin);
    }

    fpp::ExperimentReport report;
    report.columns = {"logconcavity_min", "logconcavity_argmin", "logconcavity_at_0",
                      "quantile_derivative_fd_error", "dispersive_worst_margin"};
    report.rows.push_back({cert.min_value, cert.argmin, f0, max_fd_error, worst_margin});

    nlohmann::json meta;
    meta["version"] = std::string("fppsim-") + fpp::kVersion;
    meta["seed"] = seed;
    nlohmann::json intervals = nlohmann::json::array();
    for (int n : {10, 1000, 1000000}) {
        std::vector<fpp::NormalSpec> specs(n);
        const auto r = fpp::fluct_interval(specs, 0.05);
        intervals.push_back({{"n", n},
                             {"found", r.found},
                             {"a_n", r.interval.a_n},
                             {"b_n", r.interval.b_n},
                             {"c", r.interval.c}});
    }
    meta["iid_fluct_intervals"] = intervals;
    report.metadata_json = meta.dump();
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"first-passage percolation passage times, growth representation, and "
                 "Gaussian fluctuation toolkit"};
    app.set_version_flag("--version", std::string("fppsim ") + fpp::kVersion);
    app.set_config("--config", "", "key=value config file; command-line flags override");
    app.require_subcommand(1);

    // simulate
    auto* simulate = app.add_subcommand("simulate", "sample passage times and report spreads");
    fpp::ExperimentConfig sim_config;
    CommonOpts sim_common;
    simulate->add_option("--geometry", sim_config.geometry, "square | tube | torus | cylinder")
        ->required();
    simulate->add_option("--n", sim_config.ns, "window sizes")->required();
    simulate->add_option("--replicas", sim_config.replicas, "Monte Carlo replicas per n");
    simulate->add_option("--K", sim_config.K, "cylinder height (cylinder geometry)");
    simulate->add_option("--c", sim_config.c, "quantile level for the spread");
    simulate->add_option("--window-factor", sim_config.window_factor, "torus window half-width / n");
    add_common(simulate, sim_common);

    // growth-check
    auto* growth = app.add_subcommand("growth-check",
                                      "growth representation vs Dijkstra cylinder times");
    fpp::ExperimentConfig growth_config;
    CommonOpts growth_common;
    std::string dump_path;
    int dump_count = 100;
    growth->add_option("--n", growth_config.ns, "cylinder lengths")->required();
    growth->add_option("--K", growth_config.K, "cylinder height")->required();
    growth->add_option("--replicas", growth_config.replicas, "replicas per sampler");
    growth->add_option("--dump-traces", dump_path, "write growth traces as JSON lines");
    growth->add_option("--dump-count", dump_count, "number of traces to dump");
    add_common(growth, growth_common);

    // gauss-check
    auto* gauss = app.add_subcommand("gauss-check", "certificates for the Gaussian max toolkit");
    CommonOpts gauss_common;
    add_common(gauss, gauss_common);

    // confinement
    auto* confine = app.add_subcommand("confinement", "tube geodesic vertical confinement");
    fpp::ExperimentConfig conf_config;
    conf_config.kind = "confinement";
    CommonOpts conf_common;
    confine->add_option("--n", conf_config.ns, "tube sizes")->required();
    confine->add_option("--alpha", conf_config.alpha1, "strip exponent, in (3/4, 1)");
    confine->add_option("--replicas", conf_config.replicas, "replicas per n");
    add_common(confine, conf_common);

    // min-cyl
    auto* mincyl = app.add_subcommand("min-cyl", "minimum of stacked and shifted cylinder times");
    fpp::ExperimentConfig mincyl_config;
    mincyl_config.kind = "min-cyl";
    CommonOpts mincyl_common;
    mincyl->add_option("--n", mincyl_config.ns, "tube sizes")->required();
    mincyl->add_option("--alpha2", mincyl_config.alpha2, "partition exponent, in (3/4, 1)");
    mincyl->add_option("--replicas", mincyl_config.replicas, "replicas per n");
    mincyl->add_option("--c", mincyl_config.c, "quantile level for the spreads");
    add_common(mincyl, mincyl_common);

    // torus-moments
    auto* torus = app.add_subcommand("torus-moments", "central moments of the torus time");
    fpp::ExperimentConfig torus_config;
    CommonOpts torus_common;
    torus->add_option("--n", torus_config.ns, "torus sizes")->required();
    torus->add_option("--k", torus_config.moment_orders, "moment orders");
    torus->add_option("--replicas", torus_config.replicas, "replicas per n");
    torus->add_option("--window-factor", torus_config.window_factor, "window half-width / n");
    add_common(torus, torus_common);

    // exponent-fit
    auto* expfit = app.add_subcommand("exponent-fit", "log-log fit of spread rows from a CSV");
    std::string fit_input;
    CommonOpts fit_common;
    expfit->add_option("--in", fit_input, "CSV with columns including n and spread")->required();
    add_common(expfit, fit_common);

    // calibrate-a
    auto* calibrate = app.add_subcommand("calibrate-a", "quantile calibration of a_hat");
    fpp::ExperimentConfig cal_config;
    CommonOpts cal_common;
    std::string cal_mode = "iid";
    int cal_n = 64, cal_K = 8;
    calibrate->add_option("--n", cal_n, "cylinder length")->required();
    calibrate->add_option("--K", cal_K, "cylinder height")->required();
    calibrate->add_option("--replicas", cal_config.replicas, "replicas (>= 1000)");
    calibrate->add_option("--quantile", cal_config.quantile_level, "calibration quantile level");
    calibrate->add_option("--mode", cal_mode, "iid | debug");
    add_common(calibrate, cal_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 1;
    }

    try {
        if (simulate->parsed()) {
            sim_config.kind = "simulate";
            sim_config.seed = parse_seed(sim_common.seed_text);
            sim_config.out = sim_common.out;
            sim_config.workers = sim_common.workers;
            emit_report(fpp::simulate_experiment(sim_config), sim_config.out);
        } else if (growth->parsed()) {
            growth_config.kind = "growth-check";
            growth_config.seed = parse_seed(growth_common.seed_text);
            growth_config.out = growth_common.out;
            growth_config.workers = growth_common.workers;
            if (growth_config.replicas < 2)
                throw std::invalid_argument("growth-check needs replicas >= 2");
            emit_report(fpp::growth_vs_dijkstra(growth_config), growth_config.out);
            if (!dump_path.empty()) {
                std::ofstream dump(dump_path);
                if (!dump) throw std::invalid_argument("cannot open " + dump_path);
                fpp::Rng rng(fpp::hash2(growth_config.seed, 0xD0D0ull));
                for (int i = 0; i < dump_count; ++i)
                    dump << fpp::trace_to_jsonl(
                                fpp::grow(growth_config.ns.front(), growth_config.K, rng))
                         << "\n";
            }
        } else if (gauss->parsed()) {
            emit_report(gauss_check_report(parse_seed(gauss_common.seed_text)),
                        gauss_common.out, /*json_to_stdout=*/true);
        } else if (confine->parsed()) {
            conf_config.seed = parse_seed(conf_common.seed_text);
            conf_config.out = conf_common.out;
            conf_config.workers = conf_common.workers;
            emit_report(fpp::confinement_experiment(conf_config), conf_config.out);
        } else if (mincyl->parsed()) {
            mincyl_config.seed = parse_seed(mincyl_common.seed_text);
            mincyl_config.out = mincyl_common.out;
            mincyl_config.workers = mincyl_common.workers;
            emit_report(fpp::min_cylinder_experiment(mincyl_config), mincyl_config.out);
        } else if (torus->parsed()) {
            torus_config.kind = "torus-moments";
            torus_config.seed = parse_seed(torus_common.seed_text);
            torus_config.out = torus_common.out;
            torus_config.workers = torus_common.workers;
            emit_report(fpp::torus_moment_experiment(torus_config), torus_config.out);
        } else if (expfit->parsed()) {
            std::ifstream in(fit_input);
            if (!in) throw std::invalid_argument("cannot open " + fit_input);
            std::string header;
            if (!std::getline(in, header)) throw std::invalid_argument("empty CSV " + fit_input);
            std::vector<std::string> names;
            std::stringstream hs(header);
            for (std::string cell; std::getline(hs, cell, ',');) names.push_back(cell);
            int n_col = -1, spread_col = -1;
            for (std::size_t i = 0; i < names.size(); ++i) {
                if (names[i] == "n") n_col = static_cast<int>(i);
                if (names[i] == "spread") spread_col = static_cast<int>(i);
            }
            if (n_col < 0 || spread_col < 0)
                throw std::invalid_argument("CSV must contain columns 'n' and 'spread'");
            std::vector<double> ns, spreads;
            for (std::string line; std::getline(in, line);) {
                if (line.empty()) continue;
                std::stringstream ls(line);
                std::vector<double> cells;
                for (std::string cell; std::getline(ls, cell, ',');)
                    cells.push_back(std::stod(cell));
                ns.push_back(cells.at(n_col));
                spreads.push_back(cells.at(spread_col));
            }
            const auto result = fpp::exponent_fit(ns, spreads);
            if (result.excluded_rows > 0)
                std::cerr << "warning: excluded " << result.excluded_rows
                          << " rows with nonpositive spread\n";
            fpp::ExperimentReport report;
            report.columns = {"slope", "intercept", "r2", "rows_used", "rows_excluded"};
            report.rows.push_back({result.fit.slope, result.fit.intercept, result.fit.r2,
                                   static_cast<double>(result.fit.residuals.size()),
                                   static_cast<double>(result.excluded_rows)});
            nlohmann::json meta;
            meta["residuals"] = result.fit.residuals;
            meta["input"] = fit_input;
            report.metadata_json = meta.dump();
            emit_report(report, fit_common.out);
        } else if (calibrate->parsed()) {
            cal_config.seed = parse_seed(cal_common.seed_text);
            const double a_hat =
                fpp::estimate_a_hat(fpp::weight_mode_from_string(cal_mode), cal_config.seed,
                                    cal_n, cal_K, cal_config.replicas, cal_config.quantile_level);
            fpp::ExperimentReport report;
            report.columns = {"n", "K", "replicas", "quantile_level", "a_hat"};
            report.rows.push_back({static_cast<double>(cal_n), static_cast<double>(cal_K),
                                   static_cast<double>(cal_config.replicas),
                                   cal_config.quantile_level, a_hat});
            emit_report(report, cal_common.out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const fpp::WindowOverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
