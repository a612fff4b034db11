#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fppsim/cltbounds.hpp"
#include "fppsim/env.hpp"
#include "fppsim/gaussmax.hpp"
#include "fppsim/growth.hpp"
#include "fppsim/harness.hpp"
#include "fppsim/passage.hpp"
#include "fppsim/version.hpp"

namespace py = pybind11;
using namespace fpp;

namespace {

Vertex to_vertex(const std::pair<int, int>& p) { return Vertex{p.first, p.second}; }

py::dict geodesic_dict(const GeodesicResult& g) {
    py::list path;
    for (const auto& v : g.path) path.append(py::make_tuple(v.x, v.y));
    py::dict d;
    d["time"] = g.time;
    d["path"] = path;
    d["source"] = py::make_tuple(g.source.x, g.source.y);
    d["target"] = py::make_tuple(g.target.x, g.target.y);
    d["target_tag"] = g.target_tag;
    d["tie_break"] = g.tie_break;
    d["vertical_span"] = vertical_span(g).vertical_span;
    return d;
}

py::dict report_dict(const ExperimentReport& r) {
    py::dict d;
    d["columns"] = r.columns;
    d["rows"] = r.rows;
    d["metadata"] = r.metadata_json;
    return d;
}

ExperimentConfig make_config(const std::string& kind, const std::string& geometry,
                             std::vector<int> ns, int replicas, int K, double alpha1,
                             double alpha2, double c, std::uint64_t seed, int workers,
                             double window_factor) {
    ExperimentConfig config;
    config.kind = kind;
    config.geometry = geometry;
    config.ns = std::move(ns);
    config.replicas = replicas;
    config.K = K;
    config.alpha1 = alpha1;
    config.alpha2 = alpha2;
    config.c = c;
    config.seed = seed;
    config.workers = workers;
    config.window_factor = window_factor;
    return config;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "First-passage percolation passage times, cylinder growth representation, "
              "entropic CLT bounds, and Gaussian max fluctuation toolkit";
    m.attr("__version__") = kVersion;

    py::class_<Environment>(m, "Environment")
        .def(py::init([](const std::string& mode, int n, std::uint64_t seed) {
                 return Environment(weight_mode_from_string(mode), n, seed);
             }),
             py::arg("mode"), py::arg("n"), py::arg("seed"))
        .def_property_readonly("mode", [](const Environment& e) { return to_string(e.mode()); })
        .def_property_readonly("n", &Environment::period)
        .def_property_readonly("seed", &Environment::seed)
        .def("weight",
             [](const Environment& e, std::pair<int, int> a, std::pair<int, int> b) {
                 return e.weight(to_vertex(a), to_vertex(b));
             })
        .def("with_weight",
             [](const Environment& e, std::pair<int, int> a, std::pair<int, int> b, double w) {
                 return e.with_weight(Edge{to_vertex(a), to_vertex(b)}, w);
             })
        .def("descriptor_json", &Environment::descriptor_json);

    m.def("sample_environment",
          [](const std::string& mode, int n, std::uint64_t seed) {
              return sample_environment(weight_mode_from_string(mode), n, seed);
          },
          py::arg("mode"), py::arg("n"), py::arg("seed"));
    m.def("couple", [](int n, std::uint64_t seed) {
        auto c = couple(n, seed);
        return py::make_tuple(c.iid, c.periodic);
    });
    m.def("in_fundamental_domain",
          [](std::pair<int, int> a, std::pair<int, int> b, int n) {
              return in_fundamental_domain(Edge{to_vertex(a), to_vertex(b)}, n);
          });

    m.def("square_time",
          [](const Environment& e, int n) { return geodesic_dict(square_time(e, n)); });
    m.def("tube_time", [](const Environment& e, int n) { return geodesic_dict(tube_time(e, n)); });
    m.def("torus_time",
          [](const Environment& e, int n, double window_factor) {
              return geodesic_dict(torus_time(e, n, window_factor));
          },
          py::arg("env"), py::arg("n"), py::arg("window_factor") = 1.0);
    m.def("cylinder_time",
          [](const Environment& e, int n, int K, int y_offset) {
              return geodesic_dict(cylinder_time(e, n, K, y_offset));
          },
          py::arg("env"), py::arg("n"), py::arg("K"), py::arg("y_offset") = 0);
    m.def("point_to_point",
          [](const Environment& e, int n, std::pair<int, int> x, std::pair<int, int> y) {
              return geodesic_dict(point_to_point(e, RegionSpec::square(n), to_vertex(x),
                                                  to_vertex(y)));
          });

    py::class_<GrowthTrace>(m, "GrowthTrace")
        .def_readonly("n", &GrowthTrace::n)
        .def_readonly("K", &GrowthTrace::K)
        .def_readonly("b", &GrowthTrace::b)
        .def_readonly("hitting_index", &GrowthTrace::hitting_index)
        .def_property_readonly("absorbed",
                               [](const GrowthTrace& t) {
                                   py::list out;
                                   for (const auto& v : t.absorbed)
                                       out.append(py::make_tuple(v.x, v.y));
                                   return out;
                               })
        .def("jsonl", &trace_to_jsonl);

    m.def("grow",
          [](int n, int K, std::uint64_t seed, bool continue_past_hit) {
              Rng rng(seed);
              return grow(n, K, rng, continue_past_hit);
          },
          py::arg("n"), py::arg("K"), py::arg("seed"), py::arg("continue_past_hit") = false);
    m.def("sample_time",
          [](const GrowthTrace& t, std::uint64_t seed) {
              Rng rng(seed);
              return sample_time(t, rng);
          },
          py::arg("trace"), py::arg("seed"));
    m.def("trace_moments", [](const GrowthTrace& t) {
        const auto mo = trace_moments(t);
        return py::make_tuple(mo.mu, mo.sigma);
    });
    m.def("hitting_count_check", &hitting_count_check);
    m.def("upsilon_check", [](const GrowthTrace& t, double a_hat) {
        const auto v = upsilon_check(t, AdmissibilityParams{a_hat});
        return py::make_tuple(v.admissible, v.violated);
    });
    m.def("estimate_a_hat",
          [](const std::string& mode, std::uint64_t seed, int n, int K, int replicas,
             double quantile_level) {
              return estimate_a_hat(weight_mode_from_string(mode), seed, n, K, replicas,
                                    quantile_level);
          },
          py::arg("mode"), py::arg("seed"), py::arg("n"), py::arg("K"), py::arg("replicas"),
          py::arg("quantile_level"));

    m.def("entropy_exponential", &entropy_exponential);
    m.def("entropy_gaussian", &entropy_gaussian);
    m.def("standardized_coefficients", [](const std::vector<int>& d) {
        return standardized_coefficients(d);
    });
    m.def("tv_bound",
          [](const std::vector<int>& d, double c) { return tv_bound(TVBoundInput{d, c}); },
          py::arg("d"), py::arg("c_poincare") = 0.25);
    m.def("coupling_bound", &coupling_bound);
    m.def("empirical_tv", [](const std::vector<double>& xs, int bins) {
        return empirical_tv(xs, bins);
    });

    m.def("norm_cdf", &norm_cdf);
    m.def("logconcavity_certificate",
          [](double lo, double hi, double step) {
              const auto c = logconcavity_certificate(lo, hi, step);
              return py::make_tuple(c.min_value, c.argmin);
          },
          py::arg("lo") = -10.0, py::arg("hi") = 10.0, py::arg("step") = 1e-3);

    auto to_specs = [](const std::vector<std::pair<double, double>>& pairs) {
        std::vector<NormalSpec> specs;
        specs.reserve(pairs.size());
        for (const auto& [mean, sigma] : pairs) specs.push_back(NormalSpec{mean, sigma});
        return specs;
    };
    m.def("max_cdf", [to_specs](double z, const std::vector<std::pair<double, double>>& specs) {
        return max_cdf(z, to_specs(specs));
    });
    m.def("max_quantile",
          [to_specs](double t, const std::vector<std::pair<double, double>>& specs) {
              return max_quantile(t, to_specs(specs));
          });
    m.def("quantile_shift_derivative",
          [to_specs](double t, const std::vector<std::pair<double, double>>& specs,
                     std::size_t index) {
              return quantile_shift_derivative(t, to_specs(specs), index);
          });
    m.def("dispersive_check",
          [](const std::function<double(double)>& qx, const std::function<double(double)>& qy,
             const std::vector<std::pair<double, double>>& pairs) {
              const auto rep = dispersive_check(qx, qy, pairs);
              return py::make_tuple(rep.less_dispersed, rep.worst_margin);
          });
    m.def("fluct_interval",
          [to_specs](const std::vector<std::pair<double, double>>& specs, double c_target) {
              const auto r = fluct_interval(to_specs(specs), c_target);
              py::dict d;
              d["found"] = r.found;
              d["a_n"] = r.interval.a_n;
              d["b_n"] = r.interval.b_n;
              d["c"] = r.interval.c;
              d["best_min_tail"] = r.best_min_tail;
              return d;
          });

    m.def("fluctuation_estimate", [](const std::vector<double>& xs, double c) {
        const auto f = fluctuation_estimate(xs, c);
        return py::make_tuple(f.a_n, f.b_n, f.c);
    });
    m.def("partition_heights", &partition_heights);
    m.def("exponent_fit",
          [](const std::vector<double>& ns, const std::vector<double>& spreads) {
              const auto r = exponent_fit(ns, spreads);
              py::dict d;
              d["slope"] = r.fit.slope;
              d["intercept"] = r.fit.intercept;
              d["r2"] = r.fit.r2;
              d["residuals"] = r.fit.residuals;
              d["excluded_rows"] = r.excluded_rows;
              return d;
          });

    m.def("simulate",
          [](const std::string& geometry, std::vector<int> ns, int replicas, std::uint64_t seed,
             double c, int K, int workers, double window_factor) {
              return report_dict(simulate_experiment(
                  make_config("simulate", geometry, std::move(ns), replicas, K, 0.8, 0.8, c,
                              seed, workers, window_factor)));
          },
          py::arg("geometry"), py::arg("ns"), py::arg("replicas"), py::arg("seed"),
          py::arg("c") = 0.2, py::arg("K") = -1, py::arg("workers") = 0,
          py::arg("window_factor") = 1.0);
    m.def("growth_vs_dijkstra",
          [](int n, int K, int replicas, std::uint64_t seed, int workers) {
              return report_dict(growth_vs_dijkstra(make_config(
                  "growth-check", "cylinder", {n}, replicas, K, 0.8, 0.8, 0.2, seed, workers,
                  1.0)));
          },
          py::arg("n"), py::arg("K"), py::arg("replicas"), py::arg("seed"),
          py::arg("workers") = 0);
}
