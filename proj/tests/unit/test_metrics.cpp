#include <doctest.h>

#include <cmath>

#include "core/ball2d.hpp"
#include "core/rng.hpp"
#include "core/shape_metrics.hpp"
#include "oracles.hpp"

using namespace rball;

namespace {

BallBody random_body(Rng& rng, int n, double spread) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back(rng.in_unit_disk() * spread);
    return ball_body_2d(PointSet::from_vec2(1.0, pts));
}

} // namespace

TEST_CASE("hausdorff: identity, translated disks, empty conventions") {
    const ArcPolygon lens = make_lens(1.0, 1.0);
    CHECK(hausdorff_distance(BallBody(lens), BallBody(lens)) == doctest::Approx(0.0));
    const BallBody d1 = BallBody(ArcPolygon::disk({0.0, 0.0}, 1.0));
    const BallBody d2 = BallBody(ArcPolygon::disk({0.3, 0.0}, 1.0));
    CHECK(hausdorff_distance(d1, d2) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(hausdorff_distance(BallBody::empty(), BallBody::empty()) == 0.0);
    CHECK(std::isinf(hausdorff_distance(BallBody::empty(), d1)));
}

TEST_CASE("hausdorff agrees with dense boundary sampling") {
    Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const BallBody a = random_body(rng, 2 + static_cast<int>(rng.next_u64() % 5), 0.6);
        const BallBody b = random_body(rng, 2 + static_cast<int>(rng.next_u64() % 5), 0.6);
        REQUIRE(a.is_region());
        REQUIRE(b.is_region());
        const double exact = hausdorff_distance(a, b);
        const double sampled = oracle::hausdorff_sampled(a.region(), b.region(), 1500);
        CHECK(exact == doctest::Approx(sampled).epsilon(2e-3));
    }
}

TEST_CASE("hausdorff is a metric on regions") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const BallBody a = random_body(rng, 3, 0.6);
        const BallBody b = random_body(rng, 4, 0.6);
        const BallBody c = random_body(rng, 5, 0.6);
        const double ab = hausdorff_distance(a, b);
        const double ba = hausdorff_distance(b, a);
        const double ac = hausdorff_distance(a, c);
        const double cb = hausdorff_distance(c, b);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-13));
        CHECK(ab <= ac + cb + 1e-9);
    }
}

TEST_CASE("normalize_pose maps disks to the origin") {
    const ArcPolygon d = ArcPolygon::disk({2.0, -1.0}, 1.0);
    const ArcPolygon n = normalize_pose(d);
    CHECK(n.full_disk());
    CHECK(std::fabs(n.disk_center().x) < 1e-12);
    CHECK(std::fabs(n.disk_center().y) < 1e-12);
}

TEST_CASE("normalize_pose undoes random rigid motions of a lens") {
    const ArcPolygon lens = make_lens(1.0, 1.0);
    const ArcPolygon base = normalize_pose(lens);
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const double ang = rng.uniform(0.0, kTwoPi);
        const Vec2 shift{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        ArcPolygon moved = lens.rotated(ang).translated(shift);
        const ArcPolygon renorm = normalize_pose(moved);
        // lens is symmetric in both axes, so flips cannot change the result
        CHECK(hausdorff_distance(BallBody(base), BallBody(renorm)) <= 1e-9);
    }
}

TEST_CASE("normalize_pose is idempotent") {
    Rng rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const BallBody a = random_body(rng, 3 + static_cast<int>(rng.next_u64() % 4), 0.6);
        REQUIRE(a.is_region());
        const ArcPolygon n1 = normalize_pose(a.region());
        const ArcPolygon n2 = normalize_pose(n1);
        CHECK(hausdorff_distance(BallBody(n1), BallBody(n2)) <= 1e-9);
    }
}

TEST_CASE("congruence detects rigid motions and reflections") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<Vec2> pts;
        const int n = 3 + static_cast<int>(rng.next_u64() % 3);
        for (int i = 0; i < n; ++i)
            pts.push_back(rng.in_unit_disk() * 0.6);
        const BallBody a = ball_body_2d(PointSet::from_vec2(1.0, pts));
        REQUIRE(a.is_region());

        const double ang = rng.uniform(0.0, kTwoPi);
        const Vec2 shift{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
        std::vector<Vec2> moved, mirrored;
        for (Vec2 p : pts) {
            moved.push_back(p.rotated(ang) + shift);
            mirrored.push_back({-p.x, p.y});
        }
        const BallBody b = ball_body_2d(PointSet::from_vec2(1.0, moved));
        const BallBody c = ball_body_2d(PointSet::from_vec2(1.0, mirrored));
        CHECK(is_congruent(a, b, 1e-8));
        CHECK(is_congruent(a, c, 1e-8));

        // a genuinely different body is not congruent
        const BallBody other = random_body(rng, 4, 0.5);
        const double gap = hausdorff_distance(normalize_pose(a.region()),
                                              normalize_pose(other.region()));
        if (gap > 1e-3)
            CHECK_FALSE(is_congruent(a, other, 1e-8));
    }
}

TEST_CASE("moments match Monte Carlo on a lens") {
    const ArcPolygon lens = make_lens(1.0, 1.0).translated({0.3, -0.2});
    const auto m = lens.moments();
    CHECK(m.m00 == doctest::Approx(oracle::lens_area(1.0, 1.0)).epsilon(1e-12));
    Rng rng(37);
    const int n = 400000;
    double s00 = 0, s10 = 0, s01 = 0, s20 = 0, s11 = 0, s02 = 0, s30 = 0, s03 = 0;
    const double box = 1.4, bx = 0.3, by = -0.2;
    for (int i = 0; i < n; ++i) {
        const Vec2 p{rng.uniform(bx - box, bx + box), rng.uniform(by - box, by + box)};
        if (!lens.contains(p, 0.0))
            continue;
        s00 += 1;
        s10 += p.x;
        s01 += p.y;
        s20 += p.x * p.x;
        s11 += p.x * p.y;
        s02 += p.y * p.y;
        s30 += p.x * p.x * p.x;
        s03 += p.y * p.y * p.y;
    }
    const double cell = (2 * box) * (2 * box) / n;
    CHECK(m.m00 == doctest::Approx(s00 * cell).epsilon(0.01));
    CHECK(m.m10 == doctest::Approx(s10 * cell).epsilon(0.02));
    CHECK(m.m01 == doctest::Approx(s01 * cell).epsilon(0.05));
    CHECK(m.m20 == doctest::Approx(s20 * cell).epsilon(0.02));
    CHECK(m.m11 == doctest::Approx(s11 * cell).epsilon(0.05));
    CHECK(m.m02 == doctest::Approx(s02 * cell).epsilon(0.02));
    CHECK(m.m30 == doctest::Approx(s30 * cell).epsilon(0.03));
    CHECK(m.m03 == doctest::Approx(s03 * cell).epsilon(0.2));
}
