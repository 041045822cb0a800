#pragma once

#include <span>

#include "core/arcpoly.hpp"
#include "core/geom.hpp"

namespace rball {

struct Vk2D {
    double v1 = 0.0; // first intrinsic volume = half-perimeter
    double v2 = 0.0; // area
};

// X^r: the intersection of the radius-r disks about the generators.
// Empty iff the minimal enclosing circle radius exceeds r, a single point iff
// it equals r (within tol.geom), otherwise an exact arc polygon whose arc
// centers are exactly the generators contributing boundary.
BallBody ball_body_2d(const PointSet& x, const Tolerances& tol = {});

// conv_r X: computed as the dual representation swap of ball_body_2d(x);
// vertices and arc centers trade places.
BallBody ball_hull_2d(const PointSet& x, const Tolerances& tol = {});

// A^r for a region A: reduces to ball_hull_2d of A's arc centers, since A is
// the intersection of the disks about them. A full disk of radius r dualizes
// to its center.
BallBody dual_2d(const ArcPolygon& a, const Tolerances& tol = {});

// h_A(u) = max over the region of <p, u>; exact case analysis (arc where the
// outward normal equals u, else a vertex).
double support_2d(const ArcPolygon& a, Vec2 u, const Tolerances& tol = {});

Vk2D intrinsic_volumes_2d(const BallBody& b);

// The r-lens with generators (-t/2, 0) and (t/2, 0).
ArcPolygon make_lens(double r, double t, const Tolerances& tol = {});

// Inverse of the strictly decreasing lens area map t -> V_2(lens(r, t)),
// solved by bisection to 1e-12.
double lens_gap_for_area(double r, double v);

// closed-form lens area: 2 r^2 acos(t/2r) - (t/2) sqrt(4r^2 - t^2)
double lens_area(double r, double t);

bool contains_2d(const BallBody& b, Vec2 p, const Tolerances& tol = {});

// Representation swap behind the duality: arcs centered at the vertices, with
// the old arc centers as the new vertices. Requires a non-disk region.
ArcPolygon dual_swap(const ArcPolygon& a);

} // namespace rball
