#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fppsim/env.hpp"
#include "fppsim/lattice.hpp"
#include "fppsim/rng.hpp"

namespace fpp {

/// One realization of the cylinder growth process: the cluster starts as the
/// whole left side of [0,n] x [0,K] and absorbs a uniformly random boundary
/// edge per step. b[i-1] is the boundary size seen by step i; hitting_index
/// is the first step whose absorbed vertex lies on the right side.
struct GrowthTrace {
    int n = 0;
    int K = 0;
    std::vector<int> b;             // b_i = #B_{i-1}, for each executed step
    int hitting_index = 0;          // N; steps beyond it exist only in diagnostics mode
    std::vector<Vertex> absorbed;   // y_i in absorption order
};

struct CylinderMoments {
    double mu = 0.0;     // sum of 1/b_i, i <= N
    double sigma = 0.0;  // sqrt of sum of 1/b_i^2, i <= N
};

struct AdmissibilityParams {
    double a_hat = 0.0;  // empirical stand-in for the linear-growth constant
};

struct UpsilonVerdict {
    bool admissible = false;
    int violated = 0;  // 0 if admissible, else the first failed condition (1..3)
};

GrowthTrace grow(int n, int K, Rng& rng, bool continue_past_hit = false);

/// Second sampling stage: given the fixed trace, draw independent
/// exponentials with means 1/b_i and sum them over i <= N.
double sample_time(const GrowthTrace& trace, Rng& rng);

CylinderMoments trace_moments(const GrowthTrace& trace);

/// Number of cylinder vertices y with 0 < T_{n,K}(y) <= T_{n,K}, computed
/// from a full distance field. Distributed as the hitting index N.
int hitting_count_check(const Environment& env, int n, int K);

UpsilonVerdict upsilon_check(const GrowthTrace& trace, const AdmissibilityParams& params);

/// Calibration for the admissibility constant: the empirical
/// quantile_level-quantile of T_{n,K} over fresh environments, divided by n.
/// This is a reproducible stand-in, not an estimate of the true constant.
double estimate_a_hat(WeightMode mode, std::uint64_t seed, int n, int K, int replicas,
                      double quantile_level);

/// JSON-lines dump {"n":..,"K":..,"N":..,"b":[..]} for offline analysis.
std::string trace_to_jsonl(const GrowthTrace& trace);

}  // namespace fpp
