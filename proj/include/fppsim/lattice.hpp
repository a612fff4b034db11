#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fpp {

/// Point of the planar integer lattice.
struct Vertex {
    int x = 0;
    int y = 0;

    friend bool operator==(const Vertex& a, const Vertex& b) {
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }
    friend bool operator<(const Vertex& a, const Vertex& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

inline int l1_distance(const Vertex& a, const Vertex& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

/// Nearest-neighbor lattice edge in canonical form: the lexicographically
/// smaller endpoint is stored first, so every undirected edge has exactly
/// one representation (the hash key for weight lookup).
struct Edge {
    Vertex u, v;

    Edge() = default;
    Edge(Vertex a, Vertex b) {
        if (l1_distance(a, b) != 1)
            throw std::invalid_argument("Edge endpoints must be lattice neighbors");
        if (b < a) std::swap(a, b);
        u = a;
        v = b;
    }

    bool horizontal() const { return v.x == u.x + 1; }

    friend bool operator==(const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }
    friend bool operator<(const Edge& a, const Edge& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    }
};

/// Inclusive rectangle of lattice vertices with dense row-major indexing.
struct Window {
    int x0 = 0, x1 = 0, y0 = 0, y1 = 0;

    Window() = default;
    Window(int ax0, int ax1, int ay0, int ay1) : x0(ax0), x1(ax1), y0(ay0), y1(ay1) {
        if (x1 < x0 || y1 < y0) throw std::invalid_argument("empty window");
    }

    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
    std::size_t size() const {
        return static_cast<std::size_t>(width()) * static_cast<std::size_t>(height());
    }
    bool contains(const Vertex& p) const {
        return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
    }
    int index(const Vertex& p) const { return (p.y - y0) * width() + (p.x - x0); }
    Vertex vertex(int idx) const {
        return Vertex{x0 + idx % width(), y0 + idx / width()};
    }
    bool on_boundary(const Vertex& p) const {
        return p.x == x0 || p.x == x1 || p.y == y0 || p.y == y1;
    }
};

}  // namespace fpp

template <>
struct std::hash<fpp::Vertex> {
    std::size_t operator()(const fpp::Vertex& p) const noexcept {
        return (static_cast<std::size_t>(static_cast<std::uint32_t>(p.x)) << 32) ^
               static_cast<std::uint32_t>(p.y);
    }
};
