#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "core/geom.hpp"

namespace rball {

// One boundary piece: the counterclockwise arc of the circle of radius r
// about `center`, from normal angle start_angle to end_angle
// (end_angle > start_angle; extent = end - start).
struct Arc {
    Vec2 center;
    double start_angle = 0.0;
    double end_angle = 0.0;

    double extent() const { return end_angle - start_angle; }
    double mid_angle() const { return 0.5 * (start_angle + end_angle); }
};

// Exact boundary of a planar r-ball body: counterclockwise arcs of radius
// exactly r, consecutive arcs sharing endpoints. The region equals the
// intersection of the radius-r disks about the arc centers. Closed under the
// duality that swaps vertices with arc centers.
class ArcPolygon {
public:
    ArcPolygon(double radius, std::vector<Arc> arcs);

    static ArcPolygon disk(Vec2 center, double radius);

    double radius() const { return radius_; }
    bool full_disk() const { return full_disk_; }
    const std::vector<Arc>& arcs() const { return arcs_; }
    // vertex i = shared endpoint of arc i and arc i+1 (cyclic); empty for a disk
    const std::vector<Vec2>& vertices() const { return vertices_; }
    Vec2 disk_center() const; // full-disk only

    Vec2 boundary_point(std::size_t arc_index, double theta) const {
        const Arc& a = arcs_[arc_index];
        return a.center + radius_ * unit_dir(theta);
    }

    bool contains(Vec2 p, double tol_geom) const;

    double perimeter() const;
    double area() const;

    // raw area moments m_pq = integral of x^p y^q over the region, p+q <= 3
    struct Moments {
        double m00 = 0, m10 = 0, m01 = 0;
        double m20 = 0, m11 = 0, m02 = 0;
        double m30 = 0, m03 = 0;
    };
    Moments moments() const;

    ArcPolygon translated(Vec2 t) const;
    ArcPolygon rotated(double angle) const;   // about the origin
    ArcPolygon reflected_x() const;           // (x, y) -> (-x, y)
    ArcPolygon reflected_y() const;           // (x, y) -> (x, -y)

    // Structural invariant check; throws std::logic_error on violation.
    void validate(const Tolerances& tol = {}) const;

private:
    double radius_;
    std::vector<Arc> arcs_;
    std::vector<Vec2> vertices_;
    bool full_disk_ = false;

    void derive_vertices();
};

struct EmptyBody {};
struct SinglePoint {
    Vec2 point;
};

// Trichotomy of a planar r-ball body: empty, a single point, or a region
// with interior.
class BallBody {
public:
    BallBody() : value_(EmptyBody{}) {}
    BallBody(EmptyBody e) : value_(e) {}
    BallBody(SinglePoint p) : value_(p) {}
    BallBody(ArcPolygon region) : value_(std::move(region)) {}

    static BallBody empty() { return BallBody(EmptyBody{}); }
    static BallBody point(Vec2 p) { return BallBody(SinglePoint{p}); }

    bool is_empty() const { return std::holds_alternative<EmptyBody>(value_); }
    bool is_point() const { return std::holds_alternative<SinglePoint>(value_); }
    bool is_region() const { return std::holds_alternative<ArcPolygon>(value_); }

    Vec2 point() const { return std::get<SinglePoint>(value_).point; }
    const ArcPolygon& region() const { return std::get<ArcPolygon>(value_); }

private:
    std::variant<EmptyBody, SinglePoint, ArcPolygon> value_;
};

} // namespace rball
