#pragma once

#include <limits>

#include "core/arcpoly.hpp"
#include "core/geom.hpp"

namespace rball {

// Piecewise support function of a compact convex planar body:
// h(u(theta)) = <w, u(theta)> + c on each angular interval. Exact for arc
// polygons (arcs contribute their center with offset r, vertices contribute
// themselves), for single points, and for exact disks.
struct SupportProfile {
    struct Piece {
        double lo, hi;
        Vec2 w;
        double c;
    };
    std::vector<Piece> pieces; // tile [0, 2*pi), sorted by lo

    static SupportProfile from_region(const ArcPolygon& a);
    static SupportProfile from_point(Vec2 p);
    static SupportProfile from_disk(Vec2 center, double radius);

    double eval(double theta) const;
};

// Exact Hausdorff distance between convex bodies as the sup-norm gap of their
// support functions; the maximum is attained at a piece breakpoint or where
// the difference vector aligns with the direction.
double hausdorff_profiles(const SupportProfile& a, const SupportProfile& b);

// Hausdorff distance on r-ball body results. Empty vs Empty is 0; distance to
// Empty is +infinity, so verification code treats "both empty" as equality.
double hausdorff_distance(const BallBody& a, const BallBody& b);

double hausdorff_to_disk(const BallBody& a, Vec2 center, double radius);

// Canonical pose: centroid at the origin, major second-moment axis on the
// first coordinate axis, reflections resolved by requiring nonnegative third
// central moments where they are informative. Disks get translation only.
ArcPolygon normalize_pose(const ArcPolygon& a, const Tolerances& tol = {});

// Congruence (isometry, reflections included) up to `tol` in Hausdorff
// distance after pose normalization. Shapes with near-fourfold moment
// symmetry may defeat the moment-based alignment; the verification flows only
// compare against disks and lenses, which are covered.
bool is_congruent(const BallBody& a, const BallBody& b, double tol,
                  const Tolerances& tols = {});

} // namespace rball
