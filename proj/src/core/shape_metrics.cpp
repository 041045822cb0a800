#include "core/shape_metrics.hpp"

#include <algorithm>
#include <cmath>

namespace rball {
namespace {

void push_split(std::vector<SupportProfile::Piece>& out, double lo, double hi, Vec2 w, double c) {
    // normalize into [0, 2*pi), splitting pieces that cross the seam
    if (hi - lo <= 0.0)
        return;
    lo = wrap_angle(lo);
    hi = lo + std::min(hi - lo, kTwoPi);
    if (hi <= kTwoPi + 1e-15) {
        out.push_back({lo, std::min(hi, kTwoPi), w, c});
    } else {
        out.push_back({lo, kTwoPi, w, c});
        out.push_back({0.0, hi - kTwoPi, w, c});
    }
}

} // namespace

SupportProfile SupportProfile::from_region(const ArcPolygon& a) {
    SupportProfile sp;
    if (a.full_disk()) {
        sp.pieces.push_back({0.0, kTwoPi, a.disk_center(), a.radius()});
        return sp;
    }
    const auto& arcs = a.arcs();
    const auto& verts = a.vertices();
    const std::size_t n = arcs.size();
    for (std::size_t i = 0; i < n; ++i) {
        push_split(sp.pieces, arcs[i].start_angle, arcs[i].end_angle, arcs[i].center, a.radius());
        const double gap = ccw_delta(wrap_angle(arcs[i].end_angle),
                                     wrap_angle(arcs[(i + 1) % n].start_angle));
        if (gap > 1e-15 && gap < kTwoPi - 1e-9)
            push_split(sp.pieces, wrap_angle(arcs[i].end_angle),
                       wrap_angle(arcs[i].end_angle) + gap, verts[i], 0.0);
    }
    std::sort(sp.pieces.begin(), sp.pieces.end(),
              [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
    return sp;
}

SupportProfile SupportProfile::from_point(Vec2 p) {
    SupportProfile sp;
    sp.pieces.push_back({0.0, kTwoPi, p, 0.0});
    return sp;
}

SupportProfile SupportProfile::from_disk(Vec2 center, double radius) {
    SupportProfile sp;
    sp.pieces.push_back({0.0, kTwoPi, center, radius});
    return sp;
}

double SupportProfile::eval(double theta) const {
    theta = wrap_angle(theta);
    const Vec2 u = unit_dir(theta);
    double h = -1e300;
    for (const auto& p : pieces)
        if (theta >= p.lo - 1e-12 && theta <= p.hi + 1e-12)
            h = std::max(h, p.w.dot(u) + p.c);
    return h;
}

double hausdorff_profiles(const SupportProfile& a, const SupportProfile& b) {
    std::vector<double> cuts;
    cuts.reserve(a.pieces.size() + b.pieces.size() + 1);
    for (const auto& p : a.pieces)
        cuts.push_back(p.lo);
    for (const auto& p : b.pieces)
        cuts.push_back(p.lo);
    cuts.push_back(kTwoPi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto piece_at = [](const SupportProfile& sp, double theta) -> const SupportProfile::Piece& {
        for (const auto& p : sp.pieces)
            if (theta >= p.lo - 1e-12 && theta < p.hi + 1e-12)
                return p;
        return sp.pieces.back();
    };

    double best = 0.0;
    auto consider = [&](double theta, Vec2 w, double c) {
        const double g = w.dot(unit_dir(theta)) + c;
        best = std::max(best, std::fabs(g));
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (hi - lo <= 1e-15)
            continue;
        const double mid = 0.5 * (lo + hi);
        const auto& pa = piece_at(a, mid);
        const auto& pb = piece_at(b, mid);
        const Vec2 w = pa.w - pb.w;
        const double c = pa.c - pb.c;
        consider(lo, w, c);
        consider(hi, w, c);
        const double psi = w.angle();
        for (double cand : {psi, psi + kPi}) {
            const double t = wrap_angle(cand);
            if (t >= lo && t <= hi)
                consider(t, w, c);
        }
    }
    return best;
}

double hausdorff_distance(const BallBody& a, const BallBody& b) {
    if (a.is_empty() && b.is_empty())
        return 0.0;
    if (a.is_empty() || b.is_empty())
        return std::numeric_limits<double>::infinity();
    const SupportProfile pa =
        a.is_point() ? SupportProfile::from_point(a.point()) : SupportProfile::from_region(a.region());
    const SupportProfile pb =
        b.is_point() ? SupportProfile::from_point(b.point()) : SupportProfile::from_region(b.region());
    return hausdorff_profiles(pa, pb);
}

double hausdorff_to_disk(const BallBody& a, Vec2 center, double radius) {
    if (a.is_empty())
        return std::numeric_limits<double>::infinity();
    const SupportProfile pa =
        a.is_point() ? SupportProfile::from_point(a.point()) : SupportProfile::from_region(a.region());
    return hausdorff_profiles(pa, SupportProfile::from_disk(center, radius));
}

ArcPolygon normalize_pose(const ArcPolygon& a, const Tolerances& tol) {
    auto m = a.moments();
    if (!(m.m00 > 0.0))
        throw std::logic_error("normalize_pose: degenerate region");
    const Vec2 centroid{m.m10 / m.m00, m.m01 / m.m00};
    ArcPolygon out = a.translated(-centroid);
    if (out.full_disk())
        return out;

    m = out.moments();
    const double scale2 = (m.m20 + m.m02) / m.m00; // squared length scale
    const double iso_band = 1e-9 * m.m00 * scale2;
    if (std::fabs(m.m20 - m.m02) > iso_band || std::fabs(m.m11) > iso_band) {
        const double phi = 0.5 * std::atan2(2.0 * m.m11, m.m20 - m.m02);
        out = out.rotated(-phi);
        m = out.moments();
    }

    const double band3 = 1e-9 * m.m00 * std::pow(scale2, 1.5);
    if (m.m30 < -band3)
        out = out.reflected_x();
    m = out.moments();
    if (m.m03 < -band3)
        out = out.reflected_y();
    (void)tol;
    return out;
}

bool is_congruent(const BallBody& a, const BallBody& b, double tol, const Tolerances& tols) {
    if (a.is_empty() || b.is_empty())
        return a.is_empty() && b.is_empty();
    if (a.is_point() || b.is_point())
        return a.is_point() && b.is_point();
    const ArcPolygon na = normalize_pose(a.region(), tols);
    const ArcPolygon nb = normalize_pose(b.region(), tols);
    const SupportProfile pb = SupportProfile::from_region(nb);
    const ArcPolygon variants[] = {na, na.reflected_x(), na.reflected_y(),
                                   na.reflected_x().reflected_y()};
    for (const auto& v : variants)
        if (hausdorff_profiles(SupportProfile::from_region(v), pb) <= tol)
            return true;
    return false;
}

} // namespace rball
