#pragma once

#include <span>
#include <vector>

#include "core/geom.hpp"

namespace rball {

struct MinBall {
    std::vector<double> center;
    double radius = -1.0; // negative: undefined (no points)
};

// Smallest enclosing ball in dimension d (Welzl's algorithm with
// move-to-front). Supplies the exact trichotomy test: a generator set has a
// nonempty r-ball body iff its enclosing radius is at most r.
MinBall min_enclosing_ball(std::span<const double> flat_points, int dim);

MinBall min_enclosing_ball(const PointSet& ps);

MinBall min_enclosing_circle(std::span<const Vec2> points);

} // namespace rball
