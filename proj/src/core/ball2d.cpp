#include "core/ball2d.hpp"

#include <algorithm>
#include <cmath>

#include "core/welzl.hpp"

namespace rball {
namespace {

// worst constraint violation of p against all generators: max_i |p - g_i| - r
double max_violation(Vec2 p, std::span<const Vec2> gens, double r) {
    double worst = -1e300;
    for (Vec2 g : gens)
        worst = std::max(worst, dist(p, g) - r);
    return worst;
}

} // namespace

BallBody ball_body_2d(const PointSet& x, const Tolerances& tol) {
    if (x.dim() != 2)
        throw std::domain_error("ball_body_2d: point set must be 2D");
    const double r = x.radius();
    const std::vector<Vec2> gens = x.as_vec2();

    const MinBall mec = min_enclosing_circle(gens);
    if (mec.radius > r + tol.geom)
        return BallBody::empty();
    if (mec.radius >= r - tol.geom)
        return BallBody::point({mec.center[0], mec.center[1]});
    if (gens.size() == 1)
        return BallBody(ArcPolygon::disk(gens[0], r));

    // O(n^2) pairwise circle intersections, feasibility filtering, angular
    // sort; robustness beats asymptotics at desk scale.
    std::vector<Vec2> verts;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        for (std::size_t j = i + 1; j < gens.size(); ++j) {
            const Vec2 a = gens[i], b = gens[j];
            const double d = dist(a, b);
            if (d >= 2.0 * r || d <= 0.0)
                continue;
            const double h2 = r * r - 0.25 * d * d;
            if (h2 <= 0.0)
                continue;
            const double h = std::sqrt(h2);
            const Vec2 mid = 0.5 * (a + b);
            const Vec2 n = (b - a).perp() * (1.0 / d);
            for (const Vec2 cand : {mid + h * n, mid - h * n}) {
                if (max_violation(cand, gens, r) > tol.geom)
                    continue;
                bool dup = false;
                for (Vec2 v : verts)
                    if (dist(v, cand) <= tol.geom) {
                        dup = true;
                        break;
                    }
                if (!dup)
                    verts.push_back(cand);
            }
        }
    }
    if (verts.size() < 2)
        throw std::logic_error("ball_body_2d: interior region without boundary vertices");

    Vec2 centroid{0.0, 0.0};
    for (Vec2 v : verts)
        centroid = centroid + v;
    centroid = centroid * (1.0 / static_cast<double>(verts.size()));
    std::sort(verts.begin(), verts.end(), [&](Vec2 a, Vec2 b) {
        const double aa = (a - centroid).angle(), ab = (b - centroid).angle();
        if (aa != ab)
            return aa < ab;
        return (a - centroid).norm2() < (b - centroid).norm2();
    });

    // Each consecutive vertex pair is joined by the arc of the generator whose
    // circle passes through both and whose counterclockwise arc stays feasible.
    std::vector<Arc> arcs;
    const std::size_t nv = verts.size();
    for (std::size_t i = 0; i < nv; ++i) {
        const Vec2 v0 = verts[i];
        const Vec2 v1 = verts[(i + 1) % nv];
        const Vec2* best = nullptr;
        double best_violation = 1e300;
        Arc best_arc;
        for (const Vec2& g : gens) {
            if (std::fabs(dist(v0, g) - r) > 16.0 * tol.geom ||
                std::fabs(dist(v1, g) - r) > 16.0 * tol.geom)
                continue;
            const double t0 = (v0 - g).angle();
            const double extent = ccw_delta(t0, (v1 - g).angle());
            if (extent <= 0.0 || extent > kPi + 16.0 * tol.geom)
                continue;
            const Vec2 mid = g + r * unit_dir(t0 + 0.5 * extent);
            const double viol = max_violation(mid, gens, r);
            if (viol <= 16.0 * tol.geom && viol < best_violation) {
                best_violation = viol;
                best = &g;
                best_arc = Arc{g, t0, t0 + extent};
            }
        }
        if (best == nullptr)
            throw std::logic_error("ball_body_2d: no feasible arc between adjacent vertices");
        if (best_arc.extent() >= 1e-12)
            arcs.push_back(best_arc);
    }
    if (arcs.size() < 2)
        throw std::logic_error("ball_body_2d: region collapsed to fewer than two arcs");

    // merge consecutive arcs whose centers coincide at tolerance; distinct
    // generators inside the tol.geom band would otherwise split one arc and
    // leave zero-extent slivers in the dual
    std::vector<Arc> merged;
    auto mergeable = [&](const Arc& a, const Arc& b) {
        return dist(a.center, b.center) <= tol.geom &&
               std::fabs(wrap_angle(a.end_angle) - wrap_angle(b.start_angle)) <= 1e-6;
    };
    for (const Arc& a : arcs) {
        if (!merged.empty() && mergeable(merged.back(), a))
            merged.back().end_angle += a.extent();
        else
            merged.push_back(a);
    }
    while (merged.size() > 2 && mergeable(merged.back(), merged.front())) {
        const double total = merged.back().extent() + merged.front().extent();
        merged.front().start_angle = merged.back().start_angle;
        merged.front().end_angle = merged.front().start_angle + total;
        merged.pop_back();
    }
    ArcPolygon poly(r, std::move(merged));
    poly.validate(tol);
    return BallBody(std::move(poly));
}

ArcPolygon dual_swap(const ArcPolygon& a) {
    if (a.full_disk())
        throw std::logic_error("dual_swap: full disk has a point dual");
    const auto& arcs = a.arcs();
    const auto& verts = a.vertices();
    const std::size_t n = arcs.size();
    std::vector<Arc> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // vertex i joins arc i and arc i+1; its dual arc runs from the normal
        // direction of center i to that of center i+1
        const Vec2 v = verts[i];
        const Vec2 c0 = arcs[i].center;
        const Vec2 c1 = arcs[(i + 1) % n].center;
        const double t0 = (c0 - v).angle();
        const double extent = ccw_delta(t0, (c1 - v).angle());
        if (extent < 1e-12)
            continue; // coincident neighbor centers leave no dual arc
        out.push_back(Arc{v, t0, t0 + extent});
    }
    return ArcPolygon(a.radius(), std::move(out));
}

BallBody ball_hull_2d(const PointSet& x, const Tolerances& tol) {
    if (x.dim() != 2)
        throw std::domain_error("ball_hull_2d: point set must be 2D");
    if (x.size() == 1)
        return BallBody::point(x.point2(0));
    BallBody body = ball_body_2d(x, tol);
    if (body.is_empty())
        return body; // conv_r X is empty iff X^r is empty
    if (body.is_point())
        return BallBody(ArcPolygon::disk(body.point(), x.radius()));
    ArcPolygon hull = dual_swap(body.region());
    hull.validate(tol);
    return BallBody(std::move(hull));
}

BallBody dual_2d(const ArcPolygon& a, const Tolerances& tol) {
    if (a.full_disk())
        return BallBody::point(a.disk_center());
    std::vector<Vec2> centers;
    centers.reserve(a.arcs().size());
    for (const Arc& arc : a.arcs())
        centers.push_back(arc.center);
    // A = C^r for C = arc centers, so A^r = (C^r)^r = conv_r C.
    return ball_hull_2d(PointSet::from_vec2(a.radius(), centers, tol), tol);
}

double support_2d(const ArcPolygon& a, Vec2 u, const Tolerances& tol) {
    const double n = u.norm();
    if (n <= 0.0)
        throw std::domain_error("support_2d: zero direction");
    if (std::fabs(n - 1.0) > tol.geom)
        throw std::domain_error("support_2d: direction must be a unit vector");
    u = u * (1.0 / n);
    const double theta = u.angle();
    double h = -1e300;
    for (const Arc& arc : a.arcs())
        if (angle_in_ccw_range(theta, arc.start_angle, arc.extent(), tol.geom))
            h = std::max(h, arc.center.dot(u) + a.radius());
    for (Vec2 v : a.vertices())
        h = std::max(h, v.dot(u));
    return h;
}

Vk2D intrinsic_volumes_2d(const BallBody& b) {
    if (!b.is_region())
        return {0.0, 0.0}; // V_k of the empty set and of a point vanish
    const ArcPolygon& a = b.region();
    return {0.5 * a.perimeter(), a.area()};
}

double lens_area(double r, double t) {
    return 2.0 * r * r * std::acos(t / (2.0 * r)) - 0.5 * t * std::sqrt(4.0 * r * r - t * t);
}

ArcPolygon make_lens(double r, double t, const Tolerances& tol) {
    if (!(r > 0.0))
        throw std::domain_error("make_lens: radius must be positive");
    if (!(t > 0.0 && t < 2.0 * r))
        throw std::domain_error("make_lens: center gap must lie in (0, 2r)");
    const std::vector<Vec2> gens = {{-0.5 * t, 0.0}, {0.5 * t, 0.0}};
    BallBody body = ball_body_2d(PointSet::from_vec2(r, gens, tol), tol);
    if (!body.is_region())
        throw std::domain_error("make_lens: gap too close to 2r, lens degenerates");
    return body.region();
}

double lens_gap_for_area(double r, double v) {
    if (!(r > 0.0))
        throw std::domain_error("lens_gap_for_area: radius must be positive");
    if (!(v > 0.0 && v < kPi * r * r))
        throw std::domain_error("lens_gap_for_area: area must lie in (0, pi r^2)");
    double lo = 0.0, hi = 2.0 * r;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (lens_area(r, mid) > v)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-17 * r)
            break;
    }
    return 0.5 * (lo + hi);
}

bool contains_2d(const BallBody& b, Vec2 p, const Tolerances& tol) {
    if (b.is_empty())
        return false;
    if (b.is_point())
        return dist(b.point(), p) <= tol.geom;
    return b.region().contains(p, tol.geom);
}

} // namespace rball
