#pragma once

// Test-only oracles, independent of the library's search implementation:
// exhaustive self-avoiding path enumeration, a reference Dijkstra on
// map-based storage, adaptive quadrature, and a geodesic validity checker.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "fppsim/env.hpp"
#include "fppsim/lattice.hpp"
#include "fppsim/passage.hpp"

namespace testutil {

using fpp::Environment;
using fpp::Vertex;
using fpp::Window;

// Minimum weight over all vertex self-avoiding paths from x to y inside the
// window with at most max_edges edges. Plain DFS; only usable at tiny sizes.
inline double exhaustive_path_minimum(const Environment& env, const Window& win, Vertex x,
                                      Vertex y, int max_edges) {
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> visited(win.size(), 0);
    std::function<void(Vertex, double, int)> dfs = [&](Vertex v, double cost, int edges) {
        if (cost >= best) return;
        if (v == y) {
            best = cost;
            return;
        }
        if (edges == max_edges) return;
        static constexpr int steps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& s : steps) {
            const Vertex w{v.x + s[0], v.y + s[1]};
            if (!win.contains(w) || visited[win.index(w)]) continue;
            visited[win.index(w)] = 1;
            dfs(w, cost + env.weight(v, w), edges + 1);
            visited[win.index(w)] = 0;
        }
    };
    visited[win.index(x)] = 1;
    dfs(x, 0.0, 0);
    return best;
}

// Reference multi-source Dijkstra over an arbitrary vertex set given by a
// containment predicate, using ordered maps throughout.
inline double reference_crossing_time(const Environment& env,
                                      const std::vector<Vertex>& sources,
                                      const std::function<bool(Vertex)>& inside,
                                      const std::function<bool(Vertex)>& is_target) {
    std::map<Vertex, double> dist;
    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (const Vertex& s : sources) {
        dist[s] = 0.0;
        heap.push({0.0, s});
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        auto it = dist.find(v);
        if (it == dist.end() || d > it->second) continue;
        if (is_target(v)) return d;
        static constexpr int steps[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (const auto& s : steps) {
            const Vertex w{v.x + s[0], v.y + s[1]};
            if (!inside(w)) continue;
            const double nd = d + env.weight(v, w);
            auto jt = dist.find(w);
            if (jt == dist.end() || nd < jt->second) {
                dist[w] = nd;
                heap.push({nd, w});
            }
        }
    }
    return std::numeric_limits<double>::infinity();
}

// Recursive adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-10, int depth = 30) {
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fhi, double fmid, double whole,
            int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
        const double flm = f(lmid), frm = f(rmid);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, fmid, flm, left, d - 1) +
               rec(mid, hi, fmid, fhi, frm, right, d - 1);
    };
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    return rec(a, b, fa, fb, fc, whole, depth);
}

// Structural checks every reported geodesic must satisfy; returns the
// recomputed path weight.
inline double check_geodesic(const fpp::GeodesicResult& g, const Environment& env) {
    REQUIRE(!g.path.empty());
    std::set<Vertex> seen;
    double total = 0.0;
    for (std::size_t i = 0; i < g.path.size(); ++i) {
        REQUIRE(seen.insert(g.path[i]).second);  // vertex self-avoiding
        if (i > 0) {
            REQUIRE(fpp::l1_distance(g.path[i - 1], g.path[i]) == 1);
            total += env.weight(g.path[i - 1], g.path[i]);
        }
    }
    REQUIRE(g.time == doctest::Approx(total).epsilon(1e-12));
    return total;
}

}  // namespace testutil
