#include <doctest.h>

#include <cmath>

#include "core/ball2d.hpp"
#include "core/rng.hpp"
#include "core/shape_metrics.hpp"
#include "oracles.hpp"

using namespace rball;

namespace {

PointSet ps2(double r, std::initializer_list<Vec2> pts) {
    std::vector<Vec2> v(pts);
    return PointSet::from_vec2(r, v);
}

PointSet random_generators(Rng& rng, double r, int n, double spread) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) {
        const Vec2 p = rng.in_unit_disk() * (spread * r);
        pts.push_back(p);
    }
    return PointSet::from_vec2(r, pts);
}

} // namespace

TEST_CASE("ball body of a singleton is the full disk") {
    const BallBody b = ball_body_2d(ps2(1.0, {{0.3, -0.2}}));
    REQUIRE(b.is_region());
    CHECK(b.region().full_disk());
    CHECK(b.region().disk_center().x == doctest::Approx(0.3));
    const Vk2D vk = intrinsic_volumes_2d(b);
    CHECK(vk.v1 == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(vk.v2 == doctest::Approx(kPi).epsilon(1e-13));
}

TEST_CASE("two-generator lens: vertices and closed-form intrinsic volumes") {
    const BallBody b = ball_body_2d(ps2(1.0, {{-0.5, 0.0}, {0.5, 0.0}}));
    REQUIRE(b.is_region());
    const ArcPolygon& lens = b.region();
    REQUIRE(lens.arcs().size() == 2);
    REQUIRE(lens.vertices().size() == 2);
    const double vy = std::sqrt(3.0) / 2.0;
    for (const Vec2& v : lens.vertices()) {
        CHECK(std::fabs(v.x) < 1e-12);
        CHECK(std::fabs(std::fabs(v.y) - vy) < 1e-12);
    }
    const Vk2D vk = intrinsic_volumes_2d(b);
    // frozen from the circular-segment oracle
    CHECK(vk.v1 == doctest::Approx(2.0943951023931953).epsilon(1e-12)); // 2 pi / 3
    CHECK(vk.v2 == doctest::Approx(1.2283696986087567).epsilon(1e-12)); // 2 pi/3 - sqrt(3)/2
    CHECK(vk.v2 == doctest::Approx(oracle::lens_area(1.0, 1.0)).epsilon(1e-13));
    CHECK(vk.v1 == doctest::Approx(oracle::lens_v1(1.0, 1.0)).epsilon(1e-13));
}

TEST_CASE("far generators give the empty body, circumradius r gives a point") {
    CHECK(ball_body_2d(ps2(1.0, {{0.0, 0.0}, {2.5, 0.0}})).is_empty());
    const BallBody p = ball_body_2d(ps2(1.0, {{-1.0, 0.0}, {1.0, 0.0}}));
    REQUIRE(p.is_point());
    CHECK(std::fabs(p.point().x) < 1e-9);
    CHECK(std::fabs(p.point().y) < 1e-9);
}

TEST_CASE("interior generators contribute no arcs") {
    const BallBody b = ball_body_2d(ps2(1.0, {{-0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}}));
    REQUIRE(b.is_region());
    CHECK(b.region().arcs().size() == 2);
    for (const Arc& a : b.region().arcs())
        CHECK(std::fabs(std::fabs(a.center.x) - 0.5) < 1e-12);
}

TEST_CASE("ball hull: singleton, spindle, and cocircular full disk") {
    const BallBody single = ball_hull_2d(ps2(1.0, {{0.2, 0.7}}));
    REQUIRE(single.is_point());
    CHECK(single.point().y == doctest::Approx(0.7));

    const BallBody sp = ball_hull_2d(ps2(1.0, {{-0.5, 0.0}, {0.5, 0.0}}));
    REQUIRE(sp.is_region());
    const Vk2D vk = intrinsic_volumes_2d(sp);
    CHECK(vk.v1 == doctest::Approx(1.0471975511965976).epsilon(1e-12)); // pi / 3
    CHECK(vk.v2 == doctest::Approx(0.18117214741215903).epsilon(1e-11));
    CHECK(vk.v1 == doctest::Approx(oracle::spindle_v1(1.0, 1.0)).epsilon(1e-13));
    CHECK(vk.v2 == doctest::Approx(oracle::spindle_v2(1.0, 1.0)).epsilon(1e-12));
    // spindle vertices are the generators, arc centers the lens vertices
    for (const Vec2& v : sp.region().vertices())
        CHECK(std::fabs(std::fabs(v.x) - 0.5) < 1e-12);

    // three points with circumradius exactly 1 hull to the full disk
    std::vector<Vec2> tri;
    for (int i = 0; i < 3; ++i)
        tri.push_back(unit_dir(kTwoPi * i / 3.0) + Vec2{0.2, -0.1});
    const BallBody disk = ball_hull_2d(PointSet::from_vec2(1.0, tri));
    REQUIRE(disk.is_region());
    CHECK(disk.region().full_disk());
    CHECK(disk.region().disk_center().x == doctest::Approx(0.2).epsilon(1e-9));
}

TEST_CASE("dual of the full disk is its center; dual of a lens is the spindle") {
    const BallBody c = dual_2d(ArcPolygon::disk({0.4, 0.1}, 1.0));
    REQUIRE(c.is_point());
    CHECK(c.point().x == doctest::Approx(0.4));

    const ArcPolygon lens = make_lens(1.0, 1.0);
    const BallBody dual = dual_2d(lens);
    REQUIRE(dual.is_region());
    const Vk2D vk = intrinsic_volumes_2d(dual);
    CHECK(vk.v1 == doctest::Approx(oracle::spindle_v1(1.0, 1.0)).epsilon(1e-12));
    CHECK(vk.v2 == doctest::Approx(oracle::spindle_v2(1.0, 1.0)).epsilon(1e-11));

    // membership cross-check: p in A^r iff every point of A is within r of p
    Rng rng(5);
    const auto dense = oracle::boundary_sample(lens, 4000);
    for (int i = 0; i < 2000; ++i) {
        const Vec2 p{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        double worst = 0.0;
        for (Vec2 x : dense)
            worst = std::max(worst, dist(p, x));
        const bool want = worst <= 1.0;
        const bool got = contains_2d(dual, p);
        if (std::fabs(worst - 1.0) > 1e-3) // skip knife-edge probes
            CHECK(want == got);
    }
}

TEST_CASE("support function of disk and lens") {
    const ArcPolygon disk = ArcPolygon::disk({0.0, 0.0}, 1.0);
    for (double th : {0.0, 0.7, 2.9, 4.4})
        CHECK(support_2d(disk, unit_dir(th)) == doctest::Approx(1.0).epsilon(1e-13));

    const ArcPolygon lens = make_lens(1.0, 1.0);
    CHECK(support_2d(lens, {1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(support_2d(lens, {0.0, 1.0}) ==
          doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
    CHECK_THROWS_AS(support_2d(lens, {0.0, 0.0}), std::domain_error);

    Rng rng(11);
    for (int i = 0; i < 32; ++i) {
        const Vec2 u = unit_dir(rng.uniform(0.0, kTwoPi));
        const double got = support_2d(lens, u);
        // the sampled oracle is linearly inaccurate near vertices, so it only
        // brackets the exact value from below
        const double want = oracle::support_sampled(lens, u);
        CHECK(got >= want - 1e-9);
        CHECK(got <= want + 3e-4);
    }
}

TEST_CASE("make_lens preconditions and the degenerate limits") {
    CHECK_THROWS_AS(make_lens(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(make_lens(1.0, -0.1), std::domain_error);
    const ArcPolygon thin = make_lens(1.0, 1e-6);
    CHECK(intrinsic_volumes_2d(BallBody(thin)).v2 == doctest::Approx(kPi).epsilon(1e-5));
}

TEST_CASE("lens_gap_for_area inverts the area map") {
    const double v = oracle::lens_area(1.0, 1.0);
    CHECK(lens_gap_for_area(1.0, v) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lens_gap_for_area(1.0, kPi - 1e-9) <= 1e-3);
    CHECK(lens_gap_for_area(1.0, 1e-9) >= 2.0 - 1e-2);
    CHECK_THROWS_AS(lens_gap_for_area(1.0, 4.0), std::domain_error);
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        const double v_target = rng.uniform(1e-4, kPi - 1e-4);
        const double t = lens_gap_for_area(1.0, v_target);
        CHECK(std::fabs(lens_area(1.0, t) - v_target) <= 1e-12);
        CHECK(std::fabs(make_lens(1.0, t).area() - v_target) <= 1e-10);
    }
}

TEST_CASE("contains_2d basics") {
    const BallBody disk = ball_body_2d(ps2(1.0, {{0.0, 0.0}}));
    CHECK(contains_2d(disk, {0.0, 0.0}));
    const BallBody lens = ball_body_2d(ps2(1.0, {{-0.5, 0.0}, {0.5, 0.0}}));
    CHECK_FALSE(contains_2d(lens, {0.0, 0.9}));
    CHECK(contains_2d(lens, {0.0, 0.8}));
    CHECK_FALSE(contains_2d(BallBody::empty(), {0.0, 0.0}));
}

TEST_CASE("duality involution and hull-dual consistency on random bodies") {
    Rng rng(29);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 7);
        const PointSet x = random_generators(rng, 1.0, n, 0.6);
        const BallBody body = ball_body_2d(x);
        REQUIRE(body.is_region());

        const BallBody dual = dual_2d(body.region());
        REQUIRE(dual.is_region());
        const BallBody back = dual_2d(dual.region());
        CHECK(hausdorff_distance(body, back) <= 1e-9);

        const BallBody hull = ball_hull_2d(x);
        REQUIRE(hull.is_region());
        const BallBody via_hull = dual_2d(hull.region());
        CHECK(hausdorff_distance(body, via_hull) <= 1e-9);

        // Minkowski-sum identity through support additivity: A = X^r pairs
        // with A^r = dual_2d(A)
        double worst = 0.0;
        for (int k = 0; k < 180; ++k) {
            const Vec2 u = unit_dir(kTwoPi * k / 180.0);
            const double s = support_2d(body.region(), u) + support_2d(dual.region(), -u);
            worst = std::max(worst, std::fabs(s - 1.0));
        }
        CHECK(worst <= 1e-9);

        // half-perimeter identity v1(A) + v1(A^r) = pi r
        const double v1sum =
            intrinsic_volumes_2d(hull).v1 + intrinsic_volumes_2d(dual_2d(hull.region())).v1;
        CHECK(std::fabs(v1sum - kPi) <= 1e-9);
    }
}

TEST_CASE("intrinsic volumes are rigid-motion invariant") {
    Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 5);
        std::vector<Vec2> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back(rng.in_unit_disk() * 0.55);
        const Vk2D base = intrinsic_volumes_2d(ball_body_2d(PointSet::from_vec2(1.0, pts)));
        const double ang = rng.uniform(0.0, kTwoPi);
        const Vec2 shift{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        for (auto& p : pts)
            p = p.rotated(ang) + shift;
        const Vk2D moved = intrinsic_volumes_2d(ball_body_2d(PointSet::from_vec2(1.0, pts)));
        CHECK(std::fabs(base.v1 - moved.v1) <= 1e-10 * std::max(1.0, base.v1));
        CHECK(std::fabs(base.v2 - moved.v2) <= 1e-10 * std::max(1.0, base.v2));
    }
}

TEST_CASE("isoperimetric sanity: v2 <= (2 v1)^2 / (4 pi)") {
    Rng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const PointSet x = random_generators(rng, 1.0, 2 + static_cast<int>(rng.next_u64() % 6), 0.7);
        const Vk2D vk = intrinsic_volumes_2d(ball_body_2d(x));
        CHECK(vk.v2 <= (2.0 * vk.v1) * (2.0 * vk.v1) / (4.0 * kPi) + 1e-9);
    }
}
