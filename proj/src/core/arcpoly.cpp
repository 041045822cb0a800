#include "core/arcpoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rball {

ArcPolygon::ArcPolygon(double radius, std::vector<Arc> arcs)
    : radius_(radius), arcs_(std::move(arcs)) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("arc polygon radius must be positive");
    if (arcs_.empty())
        throw std::invalid_argument("arc polygon needs at least one arc");
    full_disk_ = arcs_.size() == 1 && arcs_[0].extent() >= kTwoPi - 1e-12;
    for (auto& a : arcs_) {
        if (!(a.extent() > 0.0))
            throw std::invalid_argument("arc extent must be positive");
        const double s = wrap_angle(a.start_angle);
        a.end_angle = s + a.extent();
        a.start_angle = s;
    }
    derive_vertices();
}

ArcPolygon ArcPolygon::disk(Vec2 center, double radius) {
    return ArcPolygon(radius, {Arc{center, 0.0, kTwoPi}});
}

Vec2 ArcPolygon::disk_center() const {
    if (!full_disk_)
        throw std::logic_error("disk_center on a non-disk arc polygon");
    return arcs_[0].center;
}

void ArcPolygon::derive_vertices() {
    vertices_.clear();
    if (full_disk_)
        return;
    vertices_.reserve(arcs_.size());
    for (std::size_t i = 0; i < arcs_.size(); ++i)
        vertices_.push_back(boundary_point(i, arcs_[i].end_angle));
}

bool ArcPolygon::contains(Vec2 p, double tol_geom) const {
    const double rr = radius_ + tol_geom;
    for (const auto& a : arcs_)
        if (dist(p, a.center) > rr)
            return false;
    return true;
}

double ArcPolygon::perimeter() const {
    double len = 0.0;
    for (const auto& a : arcs_)
        len += radius_ * a.extent();
    return len;
}

double ArcPolygon::area() const {
    if (full_disk_)
        return kPi * radius_ * radius_;
    // shoelace over the vertex polygon plus one circular segment per arc
    double shoelace = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i)
        shoelace += vertices_[i].cross(vertices_[(i + 1) % n]);
    double segments = 0.0;
    for (const auto& a : arcs_) {
        const double phi = a.extent();
        segments += 0.5 * radius_ * radius_ * (phi - std::sin(phi));
    }
    return 0.5 * shoelace + segments;
}

ArcPolygon::Moments ArcPolygon::moments() const {
    // Green's theorem with Q = x^{p+1} y^q / (p+1):
    //   m_pq = contour integral of Q dy,
    // evaluated arc-wise with exact trig power integrals.
    Moments m;
    struct Slot {
        int p, q;
        double* out;
    };
    Slot slots[] = {{0, 0, &m.m00}, {1, 0, &m.m10}, {0, 1, &m.m01}, {2, 0, &m.m20},
                    {1, 1, &m.m11}, {0, 2, &m.m02}, {3, 0, &m.m30}, {0, 3, &m.m03}};
    const double R = radius_;
    for (const auto& a : arcs_) {
        const double cx = a.center.x, cy = a.center.y;
        const double t0 = a.start_angle, t1 = a.end_angle;
        for (const auto& s : slots) {
            const int P = s.p + 1;
            double acc = 0.0;
            for (int i = 0; i <= P; ++i) {
                const double bi = binomial(P, i) * std::pow(cx, P - i) * std::pow(R, i);
                for (int j = 0; j <= s.q; ++j) {
                    const double bj =
                        binomial(s.q, j) * std::pow(cy, s.q - j) * std::pow(R, j);
                    acc += bi * bj * trig_power_integral(i + 1, j, t0, t1);
                }
            }
            *s.out += acc * R / P;
        }
    }
    return m;
}

ArcPolygon ArcPolygon::translated(Vec2 t) const {
    std::vector<Arc> arcs = arcs_;
    for (auto& a : arcs)
        a.center = a.center + t;
    return ArcPolygon(radius_, std::move(arcs));
}

ArcPolygon ArcPolygon::rotated(double angle) const {
    std::vector<Arc> arcs = arcs_;
    for (auto& a : arcs) {
        a.center = a.center.rotated(angle);
        a.start_angle += angle;
        a.end_angle += angle;
    }
    return ArcPolygon(radius_, std::move(arcs));
}

ArcPolygon ArcPolygon::reflected_x() const {
    // (x, y) -> (-x, y): boundary angle theta -> pi - theta; orientation flips,
    // so arcs are reversed to restore counterclockwise order.
    std::vector<Arc> arcs;
    arcs.reserve(arcs_.size());
    for (auto it = arcs_.rbegin(); it != arcs_.rend(); ++it) {
        Arc a;
        a.center = {-it->center.x, it->center.y};
        a.start_angle = kPi - it->end_angle;
        a.end_angle = a.start_angle + it->extent();
        arcs.push_back(a);
    }
    return ArcPolygon(radius_, std::move(arcs));
}

ArcPolygon ArcPolygon::reflected_y() const {
    std::vector<Arc> arcs;
    arcs.reserve(arcs_.size());
    for (auto it = arcs_.rbegin(); it != arcs_.rend(); ++it) {
        Arc a;
        a.center = {it->center.x, -it->center.y};
        a.start_angle = -it->end_angle;
        a.end_angle = a.start_angle + it->extent();
        arcs.push_back(a);
    }
    return ArcPolygon(radius_, std::move(arcs));
}

void ArcPolygon::validate(const Tolerances& tol) const {
    std::ostringstream err;
    if (full_disk_) {
        if (arcs_.size() != 1 || std::fabs(arcs_[0].extent() - kTwoPi) > 1e-9)
            throw std::logic_error("full disk must consist of a single 2*pi arc");
        return;
    }
    const std::size_t n = arcs_.size();
    if (n < 2)
        throw std::logic_error("a non-disk region needs at least two arcs");
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Arc& a = arcs_[i];
        const Arc& b = arcs_[(i + 1) % n];
        if (a.extent() <= 0.0 || a.extent() > kPi + tol.geom) {
            err << "arc " << i << " extent " << a.extent() << " outside (0, pi]";
            throw std::logic_error(err.str());
        }
        const Vec2 end = boundary_point(i, a.end_angle);
        const Vec2 next_start = b.center + radius_ * unit_dir(b.start_angle);
        if (dist(end, next_start) > 64.0 * tol.geom) {
            err << "arcs " << i << " and " << (i + 1) % n << " do not share an endpoint ("
                << dist(end, next_start) << ")";
            throw std::logic_error(err.str());
        }
        turning += a.extent();
        turning += ccw_delta(wrap_angle(a.end_angle), wrap_angle(b.start_angle));
    }
    if (std::fabs(turning - kTwoPi) > 1e-6)
        throw std::logic_error("arc normal angles do not wind once around the circle");
    // region equals the intersection of disks about the arc centers: every
    // vertex and arc midpoint must lie within r of every center
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 mid = boundary_point(i, arcs_[i].mid_angle());
        for (const auto& other : arcs_) {
            if (dist(mid, other.center) > radius_ + 64.0 * tol.geom)
                throw std::logic_error("arc midpoint escapes a generator disk");
        }
        for (const Vec2& v : vertices_)
            if (dist(v, arcs_[i].center) > radius_ + 64.0 * tol.geom)
                throw std::logic_error("vertex escapes a generator disk");
    }
}

} // namespace rball
