// Piecewise monotone maps: construction checks, minimal-order critical
// preimages, the extrema ledger, extremum classification, and map files.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qel/entropy.hpp"
#include "qel/multimodal.hpp"
#include "qel/quad.hpp"
#include "qel/superstable.hpp"

using namespace qel;

TEST_CASE("bimodal demo cubic") {
    const MultimodalMap f = bimodal_demo();
    CHECK(f.modality() == 2);
    CHECK(f.shape() == Shape::positive);
    CHECK(f.a() == 0.0);
    CHECK(f.b() == 1.0);
    CHECK(f.critical_is_max(0));
    CHECK_FALSE(f.critical_is_max(1));
    CHECK(f.piece_rising(0));
    CHECK_FALSE(f.piece_rising(1));
    CHECK(f.piece_rising(2));

    CHECK(f(0.0) == Catch::Approx(0.1).margin(1e-15));
    CHECK(f(0.3) == Catch::Approx(0.9859375).margin(1e-12));
    CHECK(f(0.8) == Catch::Approx(0.4).margin(1e-12));

    // derivative vanishes at both interior extrema
    const double h = 1e-7;
    CHECK(std::abs(f(0.3 + h) - f(0.3 - h)) / (2 * h) <= 1e-5);
    CHECK(std::abs(f(0.8 + h) - f(0.8 - h)) / (2 * h) <= 1e-5);
}

TEST_CASE("construction rejects broken maps") {
    auto id = [](double x) { return x; };
    // critical points must be interior and ascending
    CHECK_THROWS_AS(MultimodalMap(0.0, 1.0, {0.0}, id), std::invalid_argument);
    CHECK_THROWS_AS(MultimodalMap(0.0, 1.0, {0.8, 0.3}, id), std::invalid_argument);
    CHECK_THROWS_AS(MultimodalMap(0.0, 1.0, {}, id), std::invalid_argument);
    CHECK_THROWS_AS(MultimodalMap(1.0, 0.0, {0.5}, id), std::invalid_argument);

    // identity is monotone across the claimed critical point
    CHECK_THROWS_AS(MultimodalMap(0.0, 1.0, {0.5}, id), std::invalid_argument);

    // leaves the interval
    CHECK_THROWS_AS(MultimodalMap(0.0, 1.0, {0.5},
                                  [](double x) { return 4.0 * x * (1.0 - x) + 0.5; }),
                    std::invalid_argument);

    // flat piece
    CHECK_THROWS_AS(MultimodalMap(0.0, 1.0, {0.5}, [](double) { return 0.25; }),
                    std::invalid_argument);

    // a genuine unimodal map passes
    CHECK_NOTHROW(MultimodalMap(0.0, 1.0, {0.5}, [](double x) { return 4.0 * x * (1.0 - x); }));
}

TEST_CASE("quadratic family viewed as a 1-modal map") {
    const MultimodalMap f = quad_as_multimodal(QuadParam(1.5));
    CHECK(f.modality() == 1);
    CHECK(f.shape() == Shape::positive);
    CHECK(f.criticals() == std::vector<double>{0.0});
    CHECK(f(0.0) == 1.5);

    // crossing totals equal the preimage-tree counts across the family,
    // including the tangential parameter t = 1 and the endpoint t = 2
    for (int i = 1; i <= 20; ++i) {
        const double t = 2.0 * i / 20;
        const auto counts = crossing_counts(quad_as_multimodal(QuadParam(t)), 8);
        const auto s = s_sequence(QuadParam(t), 8);
        REQUIRE(counts.size() == 9);
        for (int n = 0; n <= 8; ++n)
            REQUIRE(counts[static_cast<std::size_t>(n)].total ==
                    s[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("tangential chains are tallied, not counted") {
    const auto pre = critical_preimages(quad_as_multimodal(QuadParam(1.0)), 2);
    REQUIRE(pre.levels.size() == 3);
    CHECK(pre.levels[1].points.size() == 2);
    CHECK(pre.levels[2].points.size() == 2);
    CHECK(pre.levels[2].tangential_hits >= 1);
}

TEST_CASE("critical preimage levels of the bimodal demo") {
    const MultimodalMap f = bimodal_demo();
    const auto pre = critical_preimages(f, 5);
    REQUIRE(pre.levels.size() == 6);

    // level 0 is the criticals themselves
    CHECK(pre.levels[0].points == f.criticals());
    CHECK(pre.levels[0].target == std::vector<int>{0, 1});

    const std::size_t expect_sizes[] = {2, 3, 4, 5, 10, 12};
    for (std::size_t k = 0; k < 6; ++k)
        CHECK(pre.levels[k].points.size() == expect_sizes[k]);

    for (std::size_t k = 1; k < pre.levels.size(); ++k) {
        const auto& lv = pre.levels[k];
        REQUIRE(lv.points.size() == lv.target.size());
        for (std::size_t i = 0; i < lv.points.size(); ++i) {
            const double x = lv.points[i];
            // strictly interior and ascending
            REQUIRE(x > f.a());
            REQUIRE(x < f.b());
            if (i > 0) REQUIRE(x > lv.points[i - 1]);
            REQUIRE(lv.target[i] >= 0);
            REQUIRE(lv.target[i] < f.modality());
            // one application of f lands on the previous level
            const double y = f(x);
            bool found = false;
            for (double p : pre.levels[k - 1].points)
                if (std::abs(p - y) <= 1e-8) found = true;
            REQUIRE(found);
        }
    }
}

TEST_CASE("extrema ledger against direct grid counting") {
    const MultimodalMap f = bimodal_demo();
    const ExtremaLedger led = extrema_ledger(f, 6);
    REQUIRE(led.e.size() == 7);
    CHECK(led.e[0] == 0);
    CHECK(led.ell[0] == 1);
    CHECK(led.ell[1] == 3);  // a bimodal map has three laps

    const long long expect_e[] = {0, 2, 5, 9, 14, 24, 36};
    for (int n = 0; n <= 6; ++n) {
        CHECK(led.e[static_cast<std::size_t>(n)] == expect_e[n]);
        CHECK(led.ell[static_cast<std::size_t>(n)] == expect_e[n] + 1);
    }

    for (int n = 1; n <= 6; ++n) {
        const long long grid = count_grid_extrema(f, f.a(), f.b(), n, 200001);
        REQUIRE(grid == led.e[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("entropy of the bimodal demo stays under the lap bound") {
    const MultimodalMap f = bimodal_demo();
    const double h = entropy_multimodal(f, 12);
    CHECK(h > 0.0);
    CHECK(h <= std::log(3.0));
    CHECK_THROWS_AS(entropy_multimodal(f, 0), std::invalid_argument);

    // the quadratic wrapper agrees with the dedicated estimator
    const double hq = entropy_multimodal(quad_as_multimodal(QuadParam(2.0)), 12);
    CHECK(hq == Catch::Approx(std::log(2.0)).margin(1e-12));
}

TEST_CASE("extremum classification by rule propagation") {
    const MultimodalMap f = bimodal_demo();

    // the critical points themselves at n = 1
    const ExtremumLabel max0 = classify_extremum(f, 1, 0.3);
    CHECK(max0.kind == ExtremumKind::maximum);
    CHECK_FALSE(max0.ambiguous);
    const ExtremumLabel min1 = classify_extremum(f, 1, 0.8);
    CHECK(min1.kind == ExtremumKind::minimum);

    // a point that never reaches a critical point is not an extremum
    CHECK_THROWS_AS(classify_extremum(f, 1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(classify_extremum(f, 0, 0.3), std::invalid_argument);

    // every minimal-order preimage point agrees with a numeric stencil at
    // its first two extremal orders
    const auto pre = critical_preimages(f, 4);
    for (std::size_t k = 1; k < pre.levels.size(); ++k) {
        for (double x : pre.levels[k].points) {
            for (int extra = 1; extra <= 2; ++extra) {
                const int n = static_cast<int>(k) + extra;
                const ExtremumLabel label = classify_extremum(f, n, x);
                if (label.ambiguous) continue;
                auto fn = [&](double z) {
                    for (int j = 0; j < n; ++j) z = f(z);
                    return z;
                };
                const double st = 1e-6;
                const double vm = fn(x), vl = fn(x - st), vr = fn(x + st);
                const bool is_max = vm > vl && vm > vr;
                const bool is_min = vm < vl && vm < vr;
                REQUIRE((is_max || is_min));
                REQUIRE((label.kind == ExtremumKind::maximum) == is_max);
            }
        }
    }
}

TEST_CASE("repeated critical hits flag the label ambiguous") {
    // at the period-3 superstable parameter the critical orbit returns to 0,
    // so the preimage sqrt(t) sees a second hit four steps in
    const SolveResult r = solve_cycle(SymbolicCycle("+-C"));
    REQUIRE(r.status == SolveStatus::solved);
    const double t = r.solved->t0;
    const MultimodalMap f = quad_as_multimodal(QuadParam(t));
    const ExtremumLabel label = classify_extremum(f, 6, std::sqrt(t));
    CHECK(label.ambiguous);
    CHECK(label.ambiguous_step == 4);

    // the same point away from the superstable parameter is unambiguous
    const MultimodalMap g = quad_as_multimodal(QuadParam(1.9));
    const ExtremumLabel clean = classify_extremum(g, 6, std::sqrt(1.9));
    CHECK_FALSE(clean.ambiguous);
}

TEST_CASE("map files parse into working maps") {
    std::istringstream good(
        "# cubic with two interior extrema\n"
        "interval 0 1\n"
        "critical 0.3 0.8   # ascending\n"
        "poly 0.1 6.75 -15.46875 9.375\n");
    const MultimodalMap f = parse_map_file(good);
    CHECK(f.modality() == 2);
    const MultimodalMap ref = bimodal_demo();
    for (int i = 0; i <= 100; ++i) {
        const double x = static_cast<double>(i) / 100;
        REQUIRE(f(x) == Catch::Approx(ref(x)).margin(1e-15));
    }

    std::istringstream missing("interval 0 1\npoly 0 1\n");
    CHECK_THROWS_AS(parse_map_file(missing), std::runtime_error);

    std::istringstream unknown("interval 0 1\ncritical 0.5\nslope 2\npoly 0 1\n");
    CHECK_THROWS_AS(parse_map_file(unknown), std::runtime_error);

    std::istringstream short_interval("interval 0\ncritical 0.5\npoly 0 1\n");
    CHECK_THROWS_AS(parse_map_file(short_interval), std::runtime_error);

    CHECK_THROWS_AS(parse_map_file(std::string("/nonexistent/path.map")), std::runtime_error);
}

TEST_CASE("depth cap on the preimage cascade") {
    CHECK_THROWS_AS(critical_preimages(bimodal_demo(), 15), std::length_error);
    CHECK_THROWS_AS(critical_preimages(bimodal_demo(), -1), std::invalid_argument);
}
