#include "fppsim/growth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fppsim/passage.hpp"
#include "fppsim/stats.hpp"

namespace fpp {
namespace {

// Boundary edges are keyed by (outside vertex, direction towards the
// cluster); an indexed vector with swap-remove gives O(1) uniform sampling
// and deletion.
struct BoundaryEdge {
    std::int32_t outside;
    std::int8_t dir;  // index into kSteps: outside + step = inside
};

constexpr std::array<std::array<int, 2>, 4> kSteps{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};

}  // namespace

GrowthTrace grow(int n, int K, Rng& rng, bool continue_past_hit) {
    if (n < 1 || K < 0 || K > n - 1)
        throw std::invalid_argument("grow requires n >= 1 and 0 <= K <= n-1");
    const Window win{0, n, 0, K};
    const int vcount = static_cast<int>(win.size());

    std::vector<std::uint8_t> in_cluster(vcount, 0);
    std::vector<BoundaryEdge> boundary;
    std::vector<std::int32_t> slot(static_cast<std::size_t>(vcount) * 4, -1);

    auto remove_slot = [&](int outside, int dir) {
        const std::int32_t pos = slot[static_cast<std::size_t>(outside) * 4 + dir];
        if (pos < 0) return;
        const BoundaryEdge moved = boundary.back();
        boundary[pos] = moved;
        slot[static_cast<std::size_t>(moved.outside) * 4 + moved.dir] = pos;
        boundary.pop_back();
        slot[static_cast<std::size_t>(outside) * 4 + dir] = -1;
    };
    auto add_edges_around = [&](const Vertex& inside) {
        for (int d = 0; d < 4; ++d) {
            const Vertex out{inside.x + kSteps[d][0], inside.y + kSteps[d][1]};
            if (!win.contains(out) || in_cluster[win.index(out)]) continue;
            const int back = d ^ 1;  // direction from outside towards inside
            const int oi = win.index(out);
            slot[static_cast<std::size_t>(oi) * 4 + back] =
                static_cast<std::int32_t>(boundary.size());
            boundary.push_back(BoundaryEdge{oi, static_cast<std::int8_t>(back)});
        }
    };

    for (int y = 0; y <= K; ++y) {
        const Vertex v{0, y};
        in_cluster[win.index(v)] = 1;
    }
    for (int y = 0; y <= K; ++y) add_edges_around(Vertex{0, y});

    GrowthTrace trace;
    trace.n = n;
    trace.K = K;
    trace.hitting_index = 0;
    while (!boundary.empty()) {
        trace.b.push_back(static_cast<int>(boundary.size()));
        const std::uint64_t pick = rng.below(boundary.size());
        const Vertex absorbed = win.vertex(boundary[pick].outside);
        const int ai = win.index(absorbed);
        in_cluster[ai] = 1;
        for (int d = 0; d < 4; ++d) remove_slot(ai, d);
        add_edges_around(absorbed);
        trace.absorbed.push_back(absorbed);
        if (trace.hitting_index == 0 && absorbed.x == n) {
            trace.hitting_index = static_cast<int>(trace.absorbed.size());
            if (!continue_past_hit) break;
        }
    }
    if (trace.hitting_index == 0) throw std::logic_error("growth never reached the right side");
    return trace;
}

double sample_time(const GrowthTrace& trace, Rng& rng) {
    if (trace.hitting_index < 1 || trace.hitting_index > static_cast<int>(trace.b.size()))
        throw std::invalid_argument("sample_time on invalid trace");
    double sum = 0.0;
    for (int i = 0; i < trace.hitting_index; ++i) sum += rng.exponential() / trace.b[i];
    return sum;
}

CylinderMoments trace_moments(const GrowthTrace& trace) {
    CylinderMoments m;
    double s2 = 0.0;
    for (int i = 0; i < trace.hitting_index; ++i) {
        const double inv = 1.0 / trace.b[i];
        m.mu += inv;
        s2 += inv * inv;
    }
    m.sigma = std::sqrt(s2);
    return m;
}

int hitting_count_check(const Environment& env, int n, int K) {
    const DistanceField field = cylinder_distance_field(env, n, K);
    double crossing = std::numeric_limits<double>::infinity();
    for (int y = 0; y <= K; ++y)
        crossing = std::min(crossing, field.dist[field.window.index(Vertex{n, y})]);
    int count = 0;
    for (double t : field.dist)
        if (t > 0.0 && t <= crossing) ++count;
    return count;
}

UpsilonVerdict upsilon_check(const GrowthTrace& trace, const AdmissibilityParams& params) {
    if (params.a_hat <= 0.0 || params.a_hat >= 1.0)
        throw std::invalid_argument("a_hat must lie in (0,1)");
    if (trace.hitting_index > static_cast<int>(trace.b.size()))
        throw std::invalid_argument("trace hitting index exceeds recorded steps");
    const double a = params.a_hat;
    const int M = trace.hitting_index;
    const int n = trace.n;
    const int K = trace.K;
    if (!(a * n * K / 2.0 <= M && M <= static_cast<double>(n) * (K + 1)))
        return UpsilonVerdict{false, 1};
    for (int i = 0; i < M; ++i)
        if (trace.b[i] < K + 1) return UpsilonVerdict{false, 2};
    int small = 0;
    for (int i = 0; i < M; ++i)
        if (trace.b[i] <= 4.0 * K / a) ++small;
    if (small < a * M / 2.0) return UpsilonVerdict{false, 3};
    return UpsilonVerdict{true, 0};
}

double estimate_a_hat(WeightMode mode, std::uint64_t seed, int n, int K, int replicas,
                      double quantile_level) {
    if (replicas < 1000) throw std::invalid_argument("estimate_a_hat needs >= 1000 replicas");
    if (quantile_level < 0.0 || quantile_level >= 1.0)
        throw std::invalid_argument("quantile_level must lie in [0,1)");
    std::vector<double> times(replicas);
    for (int i = 0; i < replicas; ++i) {
        const Environment env(mode, n, derive_seed(seed, static_cast<std::uint64_t>(i)));
        times[i] = cylinder_time(env, n, K).time;
    }
    std::sort(times.begin(), times.end());
    return lower_quantile_sorted(times, quantile_level) / n;
}

std::string trace_to_jsonl(const GrowthTrace& trace) {
    nlohmann::json j;
    j["n"] = trace.n;
    j["K"] = trace.K;
    j["N"] = trace.hitting_index;
    j["b"] = std::vector<int>(trace.b.begin(), trace.b.begin() + trace.hitting_index);
    return j.dump();
}

}  // namespace fpp
