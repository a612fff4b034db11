#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fppsim/passage.hpp"
#include "test_util.hpp"

using namespace fpp;
using testutil::check_geodesic;

namespace {
const Environment unit_env(WeightMode::Debug, 8, 0);
}

TEST_CASE("point_to_point: unit weights force straight L1 paths") {
    const auto g = point_to_point(unit_env, RegionSpec::square(3), Vertex{0, 0}, Vertex{3, 0});
    CHECK(g.time == 3.0);
    REQUIRE(g.path.size() == 4);
    for (int i = 0; i <= 3; ++i) CHECK(g.path[i] == Vertex{i, 0});
}

TEST_CASE("point_to_point: coincident endpoints") {
    const auto g = point_to_point(unit_env, RegionSpec::square(3), Vertex{1, 2}, Vertex{1, 2});
    CHECK(g.time == 0.0);
    REQUIRE(g.path.size() == 1);
    CHECK(g.path[0] == Vertex{1, 2});
}

TEST_CASE("point_to_point equals exhaustive path enumeration on a 3x3 window") {
    // All self-avoiding paths in B(2) have at most 8 edges, so the cap makes
    // the enumeration complete and the comparison exact.
    const Window win{0, 2, 0, 2};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Environment env(WeightMode::IID, 2, 1000 + seed);
        const auto g = point_to_point(env, RegionSpec::square(2), Vertex{0, 0}, Vertex{2, 2});
        const double oracle = testutil::exhaustive_path_minimum(env, win, {0, 0}, {2, 2}, 8);
        CHECK(g.time == doctest::Approx(oracle).epsilon(1e-12));
        check_geodesic(g, env);
    }
}

TEST_CASE("point_to_point matches length-capped enumeration on a 5x5 window") {
    const Window win{0, 4, 0, 4};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Environment env(WeightMode::IID, 4, 31 + seed);
        const auto g = point_to_point(env, RegionSpec::square(4), Vertex{0, 0}, Vertex{4, 4});
        REQUIRE(g.path.size() - 1 <= 12);  // capped oracle is complete for these seeds
        const double oracle = testutil::exhaustive_path_minimum(env, win, {0, 0}, {4, 4}, 12);
        CHECK(g.time == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("point_to_point rejects endpoints outside the region") {
    CHECK_THROWS_AS(point_to_point(unit_env, RegionSpec::square(3), Vertex{0, 0}, Vertex{4, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(point_to_point(unit_env, RegionSpec::cylinder(4, 1), Vertex{0, 0}, Vertex{2, 2}),
                    std::invalid_argument);
}

TEST_CASE("square_time: unit weights, and the reduction to point pairs at n = 2") {
    CHECK(square_time(unit_env, 5).time == 5.0);

    const Environment env(WeightMode::IID, 2, 7);
    const auto g = square_time(env, 2);
    check_geodesic(g, env);
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            const auto p = point_to_point(env, RegionSpec::square(2), Vertex{0, a}, Vertex{2, b});
            best = std::min(best, p.time);
        }
    CHECK(g.time == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("square_time rejects periodic environments") {
    const Environment env(WeightMode::Periodic, 4, 1);
    CHECK_THROWS_AS(square_time(env, 4), std::invalid_argument);
}

TEST_CASE("restricted square variants dominate the full square crossing") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Environment env(WeightMode::IID, 4, 500 + seed);
        const double full = square_time(env, 4).time;
        const double t1 = square_time_restricted(env, 4, SquareVariant::LeftRightNoTop).time;
        const double t2 = square_time_restricted(env, 4, SquareVariant::LeftRightNoBottom).time;
        const double t3 = square_time_restricted(env, 4, SquareVariant::BottomTopNoRight).time;
        CHECK(std::min({t1, t2, t3}) <= full + 1e-12);
        CHECK(t1 >= full - 1e-12);  // restricting paths cannot shrink the minimum
        CHECK(t2 >= full - 1e-12);
    }
}

TEST_CASE("tube_time: unit weights cross in n steps") {
    for (int n : {1, 2, 5}) {
        const auto g = tube_time(unit_env, n);
        CHECK(g.time == static_cast<double>(n));
        CHECK(g.path.size() == static_cast<std::size_t>(n) + 1);
        CHECK(g.source.x == 0);
        CHECK(g.target.x == n);
        CHECK(g.source.y >= 0);
        CHECK(g.source.y < n);
    }
}

TEST_CASE("tube_time on the quotient equals a strip-window reference search") {
    const int n = 4;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Environment env(WeightMode::Periodic, n, 9000 + seed);
        const auto g = tube_time(env, n);
        check_geodesic(g, env);

        std::vector<Vertex> sources;
        for (int y = -3 * n; y <= 3 * n; ++y) sources.push_back(Vertex{0, y});
        const double oracle = testutil::reference_crossing_time(
            env, sources,
            [&](Vertex v) { return v.x >= 0 && v.x <= n && v.y >= -3 * n && v.y <= 3 * n; },
            [&](Vertex v) { return v.x == n; });
        CHECK(g.time == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("tube_time lifts its geodesic into the strip") {
    const Environment env(WeightMode::Periodic, 6, 4242);
    const auto g = tube_time(env, 6);
    for (const Vertex& v : g.path) {
        CHECK(v.x >= 0);
        CHECK(v.x <= 6);
    }
    // recomputing with periodic weights must reproduce the time; done inside:
    check_geodesic(g, env);
    CHECK_THROWS_AS(tube_time(Environment(WeightMode::IID, 6, 1), 6), std::invalid_argument);
}

TEST_CASE("torus_time: unit weights give a straight winding path") {
    const auto g = torus_time(unit_env, 4);
    CHECK(g.time == 4.0);
    REQUIRE(g.path.size() == 5);
    CHECK(g.path.front().y == g.path.back().y);
    CHECK(g.path.back().x - g.path.front().x == 4);
}

TEST_CASE("torus_time is stable under window enlargement") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Environment env(WeightMode::Periodic, 3, seed * 17);
        const auto small = torus_time(env, 3, 1.0);
        const auto big = torus_time(env, 3, 4.0);
        CHECK(small.time == big.time);
    }
}

TEST_CASE("torus window overflow carries the start row and half-width") {
    const Environment env(WeightMode::Periodic, 4, 12);
    try {
        torus_time(env, 4, 0.25, /*max_retries=*/0);
        FAIL("expected a window overflow");
    } catch (const WindowOverflowError& e) {
        CHECK(e.start_row() >= 0);
        CHECK(e.start_row() < 4);
        CHECK(e.halfwidth() >= 1);
    }
}

TEST_CASE("point_to_point rejects quotient region kinds") {
    CHECK_THROWS_AS(point_to_point(unit_env, RegionSpec::tube(4), Vertex{0, 0}, Vertex{1, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(point_to_point(unit_env, RegionSpec::torus(4), Vertex{0, 0}, Vertex{1, 0}),
                    std::invalid_argument);
}

TEST_CASE("torus_time dominates tube_time on the same weights") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Environment env(WeightMode::Periodic, 6, 60000 + seed);
        const double tor = torus_time(env, 6).time;
        const double tube = tube_time(env, 6).time;
        CHECK(tor >= tube - 1e-12);
    }
}

TEST_CASE("cylinder_time: unit weights, and the reduction to point pairs") {
    CHECK(cylinder_time(unit_env, 7, 2).time == 7.0);

    const int n = 6, K = 2;
    const Environment env(WeightMode::IID, n, 321);
    const auto g = cylinder_time(env, n, K);
    check_geodesic(g, env);
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a <= K; ++a)
        for (int b = 0; b <= K; ++b)
            best = std::min(best, point_to_point(env, RegionSpec::cylinder(n, K), Vertex{0, a},
                                                 Vertex{n, b})
                                      .time);
    CHECK(g.time == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("cylinder_time respects the vertical offset") {
    const Environment env(WeightMode::IID, 5, 11);
    const auto g = cylinder_time(env, 5, 1, 7);
    for (const Vertex& v : g.path) {
        CHECK(v.y >= 7);
        CHECK(v.y <= 8);
    }
    CHECK_THROWS_AS(cylinder_time(env, 5, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(cylinder_time(env, 5, -1, 0), std::invalid_argument);
}

TEST_CASE("degenerate one-row cylinder is a single edge chain") {
    const Environment env(WeightMode::IID, 1, 5);
    const auto g = cylinder_time(env, 1, 0);
    CHECK(g.time == doctest::Approx(env.weight(Vertex{0, 0}, Vertex{1, 0})).epsilon(1e-15));
}

TEST_CASE("vertical_span counts displacement from the initial point") {
    GeodesicResult g;
    g.path = {{0, 0}, {1, 0}, {2, 0}};
    CHECK(vertical_span(g).vertical_span == 0);
    g.path = {{0, 0}, {0, 1}, {1, 1}};
    CHECK(vertical_span(g).vertical_span == 1);
    g.path.clear();
    CHECK_THROWS_AS(vertical_span(g), std::invalid_argument);
}

TEST_CASE("passage time never decreases when an edge weight grows") {
    const int n = 6;
    Rng rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        const Environment env(WeightMode::IID, n, 7000 + trial);
        const double before = square_time(env, n).time;
        const Vertex u{static_cast<int>(rng.below(n)), static_cast<int>(rng.below(n + 1))};
        const Vertex v = rng.below(2) && u.y < n ? Vertex{u.x, u.y + 1} : Vertex{u.x + 1, u.y};
        const Edge e{u, v};
        const double delta = 0.5 + rng.uniform01();
        const Environment bumped = env.with_weight(e, env.weight(e) + delta);
        const double after = square_time(bumped, n).time;
        CHECK(after >= before - 1e-12);
        CHECK(after <= before + delta + 1e-12);  // old geodesic is still available
    }
}

TEST_CASE("reported time is bounded by an explicit competitor path") {
    const Environment env(WeightMode::IID, 8, 99);
    const auto g = square_time(env, 8);
    for (int y = 0; y <= 8; ++y) {
        double straight = 0.0;
        for (int x = 0; x < 8; ++x) straight += env.weight(Vertex{x, y}, Vertex{x + 1, y});
        CHECK(g.time <= straight + 1e-12);
    }
}
