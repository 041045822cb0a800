#include <doctest.h>

#include <cmath>

#include "core/ball2d.hpp"
#include "core/search.hpp"
#include "core/shape_metrics.hpp"
#include "oracles.hpp"

using namespace rball;

namespace {
const double kTargetArea = 2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0;
}

TEST_CASE("lens baseline closed forms") {
    CHECK(lens_baseline(1.0, kTargetArea, 1) == doctest::Approx(kPi / 3.0).epsilon(1e-12));
    CHECK(lens_baseline(1.0, kTargetArea, 2) ==
          doctest::Approx(kPi / 3.0 - std::sqrt(3.0) / 2.0).epsilon(1e-11));
    // dual collapses toward a point as the lens fills the disk
    CHECK(lens_baseline(1.0, kPi - 1e-6, 1) <= 2e-3);
}

TEST_CASE("objective at the optimal lens configuration") {
    SearchConfig c;
    c.dim = 2;
    c.k = 1;
    c.target_volume = kTargetArea;
    c.n_generators = 2;
    const double t = lens_gap_for_area(1.0, kTargetArea);
    CHECK(t == doctest::Approx(1.0).epsilon(1e-10));
    // the optimal body is the lens of area v, which is the hull of its own
    // two vertices at gap 2 sqrt(r^2 - t^2/4); its dual has V_1 = pi r - V_1(L)
    const double vertex_gap = 2.0 * std::sqrt(1.0 - 0.25 * t * t);
    const double obj = search_objective(c, std::vector<double>{vertex_gap}, 7.0);
    CHECK(obj == doctest::Approx(kPi / 3.0).epsilon(1e-9)); // penalty term vanishes

    // empty hull gets the sentinel
    const double far = search_objective(c, std::vector<double>{2.5}, 10.0);
    CHECK(far == doctest::Approx(2.0 * ball_intrinsic_volume(2, 1, 1.0) +
                                 10.0 * kTargetArea * kTargetArea));
}

TEST_CASE("config validation mirrors the problem's stated range") {
    SearchConfig c;
    c.target_volume = 4.0; // >= pi r^2
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SearchConfig{};
    c.n_generators = 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = SearchConfig{};
    c.dim = 4;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("2D search lands on the lens for both objectives") {
    for (int k : {1, 2}) {
        SearchConfig c;
        c.dim = 2;
        c.k = k;
        c.target_volume = kTargetArea;
        c.n_generators = 3;
        c.restarts = 6;
        c.max_evals = 8000;
        c.seed = 0;
        const SearchResult res = minimize(c);
        REQUIRE(res.feasible);
        const double base = lens_baseline(1.0, kTargetArea, k);
        CHECK(std::fabs(res.best_objective - base) <= 1e-6);
        CHECK(res.constraint_residual <= 1e-6 * kTargetArea);
        CHECK(res.gap >= -1e-6); // the lens is provably optimal
        REQUIRE(res.normalized_shape.has_value());
        const ArcPolygon lens = normalize_pose(make_lens(1.0, 1.0));
        CHECK(hausdorff_distance(BallBody(*res.normalized_shape), BallBody(lens)) <= 1e-3);
    }
}

TEST_CASE("traces are monotone nonincreasing per restart") {
    SearchConfig c;
    c.k = 2;
    c.target_volume = kTargetArea;
    c.n_generators = 3;
    c.restarts = 3;
    c.max_evals = 3000;
    const SearchResult res = minimize(c);
    for (const auto& t : res.trace) {
        for (std::size_t i = 1; i < t.size(); ++i)
            CHECK(t[i] <= t[i - 1] + 1e-15);
    }
}

TEST_CASE("search replays deterministically") {
    SearchConfig c;
    c.k = 1;
    c.target_volume = kTargetArea;
    c.n_generators = 3;
    c.restarts = 3;
    c.max_evals = 3000;
    const SearchResult a = minimize(c);
    const SearchResult b = minimize(c);
    CHECK(a.best_objective == b.best_objective);
    CHECK(a.best_generators == b.best_generators);
}

TEST_CASE("restart robustness across seeds") {
    int good = 0;
    const double base = lens_baseline(1.0, kTargetArea, 1);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        SearchConfig c;
        c.k = 1;
        c.target_volume = kTargetArea;
        c.n_generators = 4;
        c.restarts = 6;
        c.max_evals = 6000;
        c.seed = seed;
        const SearchResult res = minimize(c);
        if (res.feasible && std::fabs(res.best_objective - base) <= 1e-4)
            ++good;
    }
    CHECK(good >= 8);
}

TEST_CASE("3D exploratory search stays above nothing but reports the spindle gap") {
    SearchConfig c;
    c.dim = 3;
    c.k = 3;
    c.target_volume = 1.0;
    c.n_generators = 3;
    c.restarts = 2;
    c.max_evals = 250;
    c.polish_evals = 0;
    c.mc_samples = 20000;
    c.seed = 0;
    const SearchResult res = minimize(c);
    CHECK(res.exploratory);
    CHECK(res.baseline > 0.0);
    if (res.feasible) {
        CHECK(res.constraint_residual <= 1e-6 * c.target_volume);
        CHECK(res.best_objective > 0.0);
    }
}
