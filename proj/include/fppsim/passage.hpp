#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fppsim/env.hpp"
#include "fppsim/lattice.hpp"

namespace fpp {

/// Thrown when the adaptive torus window keeps being certified too small.
class WindowOverflowError : public std::runtime_error {
  public:
    WindowOverflowError(int start_row, int halfwidth)
        : std::runtime_error("torus window overflow at start row m=" + std::to_string(start_row) +
                             ", half-width w=" + std::to_string(halfwidth)),
          start_row_(start_row),
          halfwidth_(halfwidth) {}
    int start_row() const { return start_row_; }
    int halfwidth() const { return halfwidth_; }

  private:
    int start_row_;
    int halfwidth_;
};

enum class RegionKind { Square, TubeQuotient, TorusWinding, Cylinder };

struct RegionSpec {
    RegionKind kind = RegionKind::Square;
    int n = 1;
    int K = -1;       // Cylinder only
    int y_offset = 0; // Cylinder only

    static RegionSpec square(int n) { return RegionSpec{RegionKind::Square, n, -1, 0}; }
    static RegionSpec tube(int n) { return RegionSpec{RegionKind::TubeQuotient, n, -1, 0}; }
    static RegionSpec torus(int n) { return RegionSpec{RegionKind::TorusWinding, n, -1, 0}; }
    static RegionSpec cylinder(int n, int K, int y_offset = 0) {
        return RegionSpec{RegionKind::Cylinder, n, K, y_offset};
    }
};

/// Passage time together with one attaining path under the deterministic
/// tie-break (time, then hop count, then vertex index order). With
/// continuous weights the geodesic is a.s. unique; the rule only matters
/// for degenerate debug environments.
struct GeodesicResult {
    double time = 0.0;
    std::vector<Vertex> path;
    Vertex source{};
    Vertex target{};
    std::string target_tag;  // e.g. "right-side" for set targets
    std::string tie_break = "lex(time, path length, vertex order)";
};

struct SpanReport {
    int vertical_span = 0;
    Vertex origin{};
};

/// Restricted square crossings from the torus-moment argument: each variant
/// masks one boundary line of edges out of B(n).
enum class SquareVariant {
    LeftRightNoTop = 1,     // left->right, no edges inside [0,n] x {n}
    LeftRightNoBottom = 2,  // left->right, no edges inside [0,n] x {0}
    BottomTopNoRight = 3,   // bottom->top, no edges inside {n} x [0,n]
};

GeodesicResult point_to_point(const Environment& env, const RegionSpec& region, Vertex x, Vertex y);
GeodesicResult square_time(const Environment& env, int n);
GeodesicResult square_time_restricted(const Environment& env, int n, SquareVariant variant);
GeodesicResult tube_time(const Environment& env, int n);
GeodesicResult torus_time(const Environment& env, int n, double window_factor = 1.0,
                          int max_retries = 6);
GeodesicResult cylinder_time(const Environment& env, int n, int K, int y_offset = 0);

SpanReport vertical_span(const GeodesicResult& g);

/// Distances from the left side of the cylinder to every vertex of it
/// (row-major over [0,n] x [y_offset, y_offset+K]). Used for the hitting
/// count identity, which needs the full field rather than the minimum.
struct DistanceField {
    Window window;
    std::vector<double> dist;
};
DistanceField cylinder_distance_field(const Environment& env, int n, int K, int y_offset = 0);

}  // namespace fpp
