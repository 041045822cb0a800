#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/geom.hpp"
#include "core/ndbody.hpp"

namespace rball {

// conv_r X for a finite X in dimension 3, represented through its dual: the
// hull equals E^r where E is the union of the feasible edge arcs (pairwise
// sphere-intersection circles clipped by the remaining balls) of X^r. Every
// boundary cap constraint of X^r is implied by its rim, so membership reduces
// to closed-form farthest-distance tests against finitely many arcs.
class HullBody3 {
public:
    enum class Kind { Empty, Point, FullBall, Region };

    struct EdgeArc {
        double qx, qy, qz;    // circle center
        double rho;           // circle radius
        double e1x, e1y, e1z; // in-plane frame
        double e2x, e2y, e2z;
        std::vector<std::pair<double, double>> intervals; // (start, length)
    };

    HullBody3(const PointSet& generators, const Tolerances& tol = {});

    Kind kind() const { return kind_; }
    double radius() const { return r_; }
    // Point: the generator; FullBall: the ball center
    std::span<const double> anchor() const { return anchor_; }
    const std::vector<EdgeArc>& edges() const { return edges_; }

    bool contains(std::span<const double> p, double tol_geom) const;

    std::span<const double> box_lo() const { return box_lo_; }
    std::span<const double> box_hi() const { return box_hi_; }

    // hit-or-miss volume; exact for the degenerate kinds
    VkEstimate volume_mc(long long n_samples, uint64_t seed) const;

private:
    Kind kind_ = Kind::Empty;
    double r_ = 0.0;
    Tolerances tol_;
    std::vector<double> anchor_;
    std::vector<EdgeArc> edges_;
    std::vector<double> box_lo_, box_hi_;

    double max_dist2_to_edges(std::span<const double> p) const;
};

// volume of the 3D spindle conv_r{x1, x2} with |x1 - x2| = t, by the solid of
// revolution of the planar spindle: pi (r^2 t - t^3/12 - 2 c0 r^2 asin(t/2r))
// with c0 = sqrt(r^2 - t^2/4)
double spindle3_volume(double r, double t);

// gap t such that the 3D spindle of two points has the given volume
double spindle3_gap_for_volume(double r, double v);

} // namespace rball
