#include "fppsim/passage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace fpp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct HeapItem {
    double dist;
    std::int32_t hops;
    std::int32_t idx;
};
struct HeapCmp {
    bool operator()(const HeapItem& a, const HeapItem& b) const {
        if (a.dist != b.dist) return a.dist > b.dist;
        if (a.hops != b.hops) return a.hops > b.hops;
        return a.idx > b.idx;
    }
};

// Direction codes for parent links: +x, -x, +y, -y.
enum Dir : std::int8_t { kRight = 0, kLeft = 1, kUp = 2, kDown = 3, kNone = -1 };

struct SearchState {
    std::vector<double> dist;
    std::vector<std::int32_t> hops;
    std::vector<std::int32_t> parent;
    std::vector<std::int8_t> pdir;

    explicit SearchState(std::size_t vcount)
        : dist(vcount, kInf), hops(vcount, 0), parent(vcount, -1), pdir(vcount, kNone) {}
};

enum class StopMode { FirstTarget, FullScan };

// Shared Dijkstra core. NeighborFn(u, visit) must call visit(v, w, dir) for
// every outgoing edge; w = inf edges are skipped. Ties resolve on
// (dist, hops, vertex index) at pops and (dist, hops, parent index) at
// relaxations, so results are deterministic even with degenerate weights.
template <class NeighborFn, class TargetFn>
int dijkstra_core(SearchState& st, const std::vector<int>& sources, TargetFn&& is_target,
                  NeighborFn&& neighbors, StopMode stop) {
    std::priority_queue<HeapItem, std::vector<HeapItem>, HeapCmp> heap;
    for (int s : sources) {
        st.dist[s] = 0.0;
        heap.push(HeapItem{0.0, 0, s});
    }
    int found = -1;
    while (!heap.empty()) {
        const HeapItem top = heap.top();
        heap.pop();
        if (top.dist != st.dist[top.idx] || top.hops != st.hops[top.idx]) continue;
        if (found < 0 && is_target(top.idx)) {
            found = top.idx;
            if (stop == StopMode::FirstTarget) return found;
        }
        neighbors(top.idx, [&](int v, double w, std::int8_t dir) {
            if (w == kInf) return;
            const double nd = top.dist + w;
            const std::int32_t nh = top.hops + 1;
            if (nd < st.dist[v] || (nd == st.dist[v] && nh < st.hops[v])) {
                st.dist[v] = nd;
                st.hops[v] = nh;
                st.parent[v] = top.idx;
                st.pdir[v] = dir;
                heap.push(HeapItem{nd, nh, v});
            } else if (nd == st.dist[v] && nh == st.hops[v] && top.idx < st.parent[v]) {
                st.parent[v] = top.idx;
                st.pdir[v] = dir;
            }
        });
    }
    return found;
}

// ---------------------------------------------------------------------------
// Planar window graphs

struct WindowWeights {
    Window win;
    std::vector<double> wh;  // wh[i]: edge vertex(i) -> vertex(i)+e1
    std::vector<double> wv;  // wv[i]: edge vertex(i) -> vertex(i)+e2
};

template <class Filter>
WindowWeights build_window_weights(const Environment& env, const Window& win, Filter&& keep) {
    WindowWeights w{win, std::vector<double>(win.size(), kInf),
                    std::vector<double>(win.size(), kInf)};
    const int width = win.width();
    for (int y = win.y0; y <= win.y1; ++y) {
        for (int x = win.x0; x <= win.x1; ++x) {
            const Vertex a{x, y};
            const int i = (y - win.y0) * width + (x - win.x0);
            if (x + 1 <= win.x1 && keep(a, Vertex{x + 1, y}))
                w.wh[i] = env.weight(a, Vertex{x + 1, y});
            if (y + 1 <= win.y1 && keep(a, Vertex{x, y + 1}))
                w.wv[i] = env.weight(a, Vertex{x, y + 1});
        }
    }
    return w;
}

WindowWeights build_window_weights(const Environment& env, const Window& win) {
    return build_window_weights(env, win, [](const Vertex&, const Vertex&) { return true; });
}

template <class TargetFn>
int window_search(SearchState& st, const WindowWeights& w, const std::vector<int>& sources,
                  TargetFn&& is_target, StopMode stop) {
    const int width = w.win.width();
    const int height = w.win.height();
    auto neighbors = [&](int u, auto&& visit) {
        const int x = u % width;
        const int y = u / width;
        if (x + 1 < width) visit(u + 1, w.wh[u], kRight);
        if (x > 0) visit(u - 1, w.wh[u - 1], kLeft);
        if (y + 1 < height) visit(u + width, w.wv[u], kUp);
        if (y > 0) visit(u - width, w.wv[u - width], kDown);
    };
    return dijkstra_core(st, sources, is_target, neighbors, stop);
}

std::vector<Vertex> window_path(const SearchState& st, const Window& win, int target) {
    std::vector<Vertex> path;
    for (int v = target; v >= 0; v = st.parent[v]) path.push_back(win.vertex(v));
    std::reverse(path.begin(), path.end());
    return path;
}

GeodesicResult window_crossing(const WindowWeights& w, const std::vector<int>& sources,
                               int target_coord, bool horizontal, const std::string& tag) {
    SearchState st(w.win.size());
    const int width = w.win.width();
    auto is_target = [&](int idx) {
        return horizontal ? (w.win.x0 + idx % width) == target_coord
                          : (w.win.y0 + idx / width) == target_coord;
    };
    const int hit = window_search(st, w, sources, is_target, StopMode::FirstTarget);
    if (hit < 0) throw std::logic_error("window crossing unreachable");
    GeodesicResult g;
    g.time = st.dist[hit];
    g.path = window_path(st, w.win, hit);
    g.source = g.path.front();
    g.target = g.path.back();
    g.target_tag = tag;
    return g;
}

void require_not_periodic(const Environment& env, const char* op) {
    if (env.mode() == WeightMode::Periodic)
        throw std::invalid_argument(std::string(op) + " requires i.i.d. (or debug) weights");
}
void require_not_iid(const Environment& env, const char* op) {
    if (env.mode() == WeightMode::IID)
        throw std::invalid_argument(std::string(op) + " requires periodic (or debug) weights");
}

Window cylinder_window(int n, int K, int y_offset) {
    if (n < 1) throw std::invalid_argument("cylinder length n must be >= 1");
    if (K < 0 || K > n - 1) throw std::invalid_argument("cylinder height K must satisfy 0 <= K <= n-1");
    return Window{0, n, y_offset, y_offset + K};
}

std::vector<int> left_column_sources(const Window& win) {
    std::vector<int> s;
    s.reserve(win.height());
    for (int y = win.y0; y <= win.y1; ++y) s.push_back(win.index(Vertex{win.x0, y}));
    return s;
}

// ---------------------------------------------------------------------------
// Tube quotient graph: vertices (x, m) with x in [0,n], m in Z_n; vertical
// edges wrap, parallel edges between the same pair (n = 2) are kept.

struct QuotientWeights {
    int n;
    std::vector<double> wh;  // (x,m) -> (x+1,m)
    std::vector<double> wv;  // (x,m) -> (x,m+1 mod n), weight of edge {(x,m),(x,m+1)}
};

QuotientWeights build_quotient_weights(const Environment& env, int n) {
    const std::size_t count = static_cast<std::size_t>(n + 1) * n;
    QuotientWeights q{n, std::vector<double>(count, kInf), std::vector<double>(count, kInf)};
    for (int m = 0; m < n; ++m) {
        for (int x = 0; x <= n; ++x) {
            const std::size_t i = static_cast<std::size_t>(m) * (n + 1) + x;
            if (x < n) q.wh[i] = env.weight(Vertex{x, m}, Vertex{x + 1, m});
            if (n > 1) q.wv[i] = env.weight(Vertex{x, m}, Vertex{x, m + 1});
        }
    }
    return q;
}

}  // namespace

GeodesicResult point_to_point(const Environment& env, const RegionSpec& region, Vertex x,
                              Vertex y) {
    Window win;
    switch (region.kind) {
        case RegionKind::Square:
            require_not_periodic(env, "square point_to_point");
            win = Window{0, region.n, 0, region.n};
            break;
        case RegionKind::Cylinder:
            win = cylinder_window(region.n, region.K, region.y_offset);
            break;
        default:
            throw std::invalid_argument("point_to_point supports square and cylinder regions");
    }
    if (!win.contains(x) || !win.contains(y))
        throw std::invalid_argument("point_to_point endpoints outside region");
    GeodesicResult g;
    g.source = x;
    g.target = y;
    g.target_tag = "point";
    if (x == y) {
        g.time = 0.0;
        g.path = {x};
        return g;
    }
    const auto w = build_window_weights(env, win);
    SearchState st(win.size());
    const int ty = win.index(y);
    const int hit = window_search(st, w, {win.index(x)}, [&](int idx) { return idx == ty; },
                                  StopMode::FirstTarget);
    if (hit < 0) throw std::logic_error("region graph disconnected");
    g.time = st.dist[hit];
    g.path = window_path(st, win, hit);
    return g;
}

GeodesicResult square_time(const Environment& env, int n) {
    if (n < 1) throw std::invalid_argument("square size n must be >= 1");
    require_not_periodic(env, "square_time");
    const Window win{0, n, 0, n};
    const auto w = build_window_weights(env, win);
    return window_crossing(w, left_column_sources(win), n, true, "right-side");
}

GeodesicResult square_time_restricted(const Environment& env, int n, SquareVariant variant) {
    if (n < 1) throw std::invalid_argument("square size n must be >= 1");
    require_not_periodic(env, "square_time_restricted");
    const Window win{0, n, 0, n};
    auto keep = [&](const Vertex& a, const Vertex& b) {
        switch (variant) {
            case SquareVariant::LeftRightNoTop: return !(a.y == n && b.y == n);
            case SquareVariant::LeftRightNoBottom: return !(a.y == 0 && b.y == 0);
            case SquareVariant::BottomTopNoRight: return !(a.x == n && b.x == n);
        }
        return true;
    };
    const auto w = build_window_weights(env, win, keep);
    if (variant == SquareVariant::BottomTopNoRight) {
        std::vector<int> sources;
        for (int x = 0; x <= n; ++x) sources.push_back(win.index(Vertex{x, 0}));
        return window_crossing(w, sources, n, false, "top-side");
    }
    return window_crossing(w, left_column_sources(win), n, true, "right-side");
}

GeodesicResult tube_time(const Environment& env, int n) {
    if (n < 1) throw std::invalid_argument("tube period n must be >= 1");
    require_not_iid(env, "tube_time");
    const auto q = build_quotient_weights(env, n);
    const std::size_t count = static_cast<std::size_t>(n + 1) * n;
    SearchState st(count);
    std::vector<int> sources;
    sources.reserve(n);
    for (int m = 0; m < n; ++m) sources.push_back(m * (n + 1));
    auto neighbors = [&](int u, auto&& visit) {
        const int x = u % (n + 1);
        const int m = u / (n + 1);
        if (x < n) visit(u + 1, q.wh[u], kRight);
        if (x > 0) visit(u - 1, q.wh[u - 1], kLeft);
        if (n > 1) {
            const int up = ((m + 1) % n) * (n + 1) + x;
            const int dn = ((m + n - 1) % n) * (n + 1) + x;
            visit(up, q.wv[u], kUp);
            visit(dn, q.wv[dn], kDown);
        }
    };
    const int hit = dijkstra_core(st, sources, [&](int idx) { return idx % (n + 1) == n; },
                                  neighbors, StopMode::FirstTarget);
    if (hit < 0) throw std::logic_error("tube crossing unreachable");

    // Unwind the parent chain, then lift to the strip S(n) by replaying the
    // step directions from the representative start (0, m0) with m0 in [0,n).
    std::vector<std::int8_t> dirs;
    int v = hit;
    while (st.parent[v] >= 0) {
        dirs.push_back(st.pdir[v]);
        v = st.parent[v];
    }
    std::reverse(dirs.begin(), dirs.end());
    GeodesicResult g;
    g.time = st.dist[hit];
    Vertex p{0, v / (n + 1)};
    g.path.push_back(p);
    for (std::int8_t d : dirs) {
        switch (d) {
            case kRight: ++p.x; break;
            case kLeft: --p.x; break;
            case kUp: ++p.y; break;
            case kDown: --p.y; break;
        }
        g.path.push_back(p);
    }
    g.source = g.path.front();
    g.target = g.path.back();
    g.target_tag = "right-side";
    return g;
}

GeodesicResult torus_time(const Environment& env, int n, double window_factor, int max_retries) {
    if (n < 1) throw std::invalid_argument("torus period n must be >= 1");
    if (window_factor <= 0.0) throw std::invalid_argument("window_factor must be positive");
    require_not_iid(env, "torus_time");

    GeodesicResult best;
    best.time = kInf;
    for (int m = 0; m < n; ++m) {
        int w = std::max(1, static_cast<int>(std::llround(window_factor * n)));
        for (int attempt = 0;; ++attempt, w *= 2) {
            if (attempt > max_retries) throw WindowOverflowError(m, w);
            const Window win{-w, n + w, m - w, m + w};
            const auto weights = build_window_weights(env, win);
            SearchState st(win.size());
            const int target = win.index(Vertex{n, m});
            const int hit = window_search(st, weights, {win.index(Vertex{0, m})},
                                          [&](int idx) { return idx == target; },
                                          StopMode::FullScan);
            if (hit < 0) throw std::logic_error("torus window disconnected");
            const double d = st.dist[hit];
            // The window certifies the unrestricted planar distance when no
            // boundary vertex is reachable within d: any path escaping the
            // window pays at least the distance to its first boundary touch.
            bool escaped = false;
            for (int x = win.x0; x <= win.x1 && !escaped; ++x)
                escaped = st.dist[win.index(Vertex{x, win.y0})] <= d ||
                          st.dist[win.index(Vertex{x, win.y1})] <= d;
            for (int y = win.y0; y <= win.y1 && !escaped; ++y)
                escaped = st.dist[win.index(Vertex{win.x0, y})] <= d ||
                          st.dist[win.index(Vertex{win.x1, y})] <= d;
            if (escaped) continue;
            if (d < best.time) {
                best.time = d;
                best.path = window_path(st, win, hit);
                best.source = best.path.front();
                best.target = best.path.back();
                best.target_tag = "winding-endpoint";
            }
            break;
        }
    }
    return best;
}

GeodesicResult cylinder_time(const Environment& env, int n, int K, int y_offset) {
    const Window win = cylinder_window(n, K, y_offset);
    const auto w = build_window_weights(env, win);
    return window_crossing(w, left_column_sources(win), n, true, "right-side");
}

SpanReport vertical_span(const GeodesicResult& g) {
    if (g.path.empty()) throw std::invalid_argument("vertical_span of empty path");
    SpanReport r;
    r.origin = g.path.front();
    for (const Vertex& v : g.path)
        r.vertical_span = std::max(r.vertical_span, std::abs(v.y - r.origin.y));
    return r;
}

DistanceField cylinder_distance_field(const Environment& env, int n, int K, int y_offset) {
    const Window win = cylinder_window(n, K, y_offset);
    const auto w = build_window_weights(env, win);
    SearchState st(win.size());
    window_search(st, w, left_column_sources(win), [](int) { return false; }, StopMode::FullScan);
    return DistanceField{win, std::move(st.dist)};
}

}  // namespace fpp
