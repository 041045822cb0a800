#include "core/hull3d.hpp"

#include <algorithm>
#include <cmath>

#include "core/rng.hpp"
#include "core/welzl.hpp"

namespace rball {
namespace {

struct V3 {
    double x = 0, y = 0, z = 0;
    V3 operator+(V3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    V3 operator-(V3 o) const { return {x - o.x, y - o.y, z - o.z}; }
    V3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(V3 o) const { return x * o.x + y * o.y + z * o.z; }
    V3 cross(V3 o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
};

V3 at(std::span<const double> p) { return {p[0], p[1], p[2]}; }

// intersect a circular interval list with the kept set [lo, lo+len] (mod 2pi)
std::vector<std::pair<double, double>> circ_intersect(
    const std::vector<std::pair<double, double>>& xs, double lo, double len) {
    std::vector<std::pair<double, double>> out;
    lo = wrap_angle(lo);
    for (const auto& [a, l] : xs) {
        // unroll the constraint to the line around [a, a+l]
        for (int shift = -1; shift <= 1; ++shift) {
            const double c0 = lo + shift * kTwoPi;
            const double c1 = c0 + len;
            const double s = std::max(a, c0);
            const double e = std::min(a + l, c1);
            if (e - s > 1e-14)
                out.emplace_back(s, e - s);
        }
    }
    return out;
}

} // namespace

HullBody3::HullBody3(const PointSet& generators, const Tolerances& tol)
    : r_(generators.radius()), tol_(tol) {
    if (generators.dim() != 3)
        throw std::domain_error("HullBody3: generators must be 3D");
    const MinBall meb = min_enclosing_ball(generators);
    if (meb.radius > r_ + tol.geom) {
        kind_ = Kind::Empty;
        return;
    }
    if (meb.radius >= r_ - tol.geom) {
        // X^r is a single point c, so conv_r X = (X^r)^r = B[c, r]
        kind_ = Kind::FullBall;
        anchor_ = meb.center;
    } else if (generators.size() == 1) {
        kind_ = Kind::Point;
        anchor_.assign(generators.point(0).begin(), generators.point(0).end());
        return;
    } else {
        kind_ = Kind::Region;
    }

    if (kind_ == Kind::FullBall) {
        box_lo_ = {anchor_[0] - r_, anchor_[1] - r_, anchor_[2] - r_};
        box_hi_ = {anchor_[0] + r_, anchor_[1] + r_, anchor_[2] + r_};
        return;
    }

    const std::size_t n = generators.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const V3 xi = at(generators.point(i));
            const V3 xj = at(generators.point(j));
            const double dgap = (xj - xi).norm();
            if (dgap >= 2.0 * r_ || dgap <= 0.0)
                continue;
            EdgeArc e;
            const V3 q = (xi + xj) * 0.5;
            const double rho = std::sqrt(std::max(0.0, r_ * r_ - 0.25 * dgap * dgap));
            const V3 axis = (xj - xi) * (1.0 / dgap);
            V3 ref{1, 0, 0};
            if (std::fabs(axis.x) > 0.9)
                ref = {0, 1, 0};
            V3 e1 = axis.cross(ref);
            e1 = e1 * (1.0 / e1.norm());
            const V3 e2 = axis.cross(e1);
            e.qx = q.x; e.qy = q.y; e.qz = q.z;
            e.rho = rho;
            e.e1x = e1.x; e.e1y = e1.y; e.e1z = e1.z;
            e.e2x = e2.x; e.e2y = e2.y; e.e2z = e2.z;
            e.intervals = {{0.0, kTwoPi}};
            for (std::size_t k = 0; k < n && !e.intervals.empty(); ++k) {
                if (k == i || k == j)
                    continue;
                const V3 xk = at(generators.point(k));
                const V3 w = q - xk;
                const double base = w.dot(w) + rho * rho;
                const double v1 = w.dot(e1), v2 = w.dot(e2);
                const double beta = (r_ * r_ - base) / (2.0 * rho);
                const double W = std::hypot(v1, v2);
                if (W < 1e-14) {
                    if (beta < 0.0)
                        e.intervals.clear();
                    continue;
                }
                const double ratio = beta / W;
                if (ratio >= 1.0)
                    continue; // constraint inactive on the whole circle
                if (ratio <= -1.0) {
                    e.intervals.clear();
                    continue;
                }
                // keep cos(phi - psi) <= ratio
                const double psi = std::atan2(v2, v1);
                const double gamma = std::acos(ratio);
                e.intervals = circ_intersect(e.intervals, psi + gamma, kTwoPi - 2.0 * gamma);
            }
            if (!e.intervals.empty())
                edges_.push_back(std::move(e));
        }
    }
    if (edges_.empty())
        throw std::logic_error("HullBody3: region without feasible edge arcs");

    // bounding box: the hull lies inside B[y, r] for every edge point y and
    // inside B[c, r] for the enclosing-ball center
    box_lo_ = {meb.center[0] - r_, meb.center[1] - r_, meb.center[2] - r_};
    box_hi_ = {meb.center[0] + r_, meb.center[1] + r_, meb.center[2] + r_};
    auto shrink = [&](V3 y) {
        box_lo_[0] = std::max(box_lo_[0], y.x - r_);
        box_lo_[1] = std::max(box_lo_[1], y.y - r_);
        box_lo_[2] = std::max(box_lo_[2], y.z - r_);
        box_hi_[0] = std::min(box_hi_[0], y.x + r_);
        box_hi_[1] = std::min(box_hi_[1], y.y + r_);
        box_hi_[2] = std::min(box_hi_[2], y.z + r_);
    };
    for (const auto& e : edges_) {
        const V3 q{e.qx, e.qy, e.qz};
        const V3 e1{e.e1x, e.e1y, e.e1z};
        const V3 e2{e.e2x, e.e2y, e.e2z};
        for (const auto& [a, l] : e.intervals)
            for (double f : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                const double phi = a + f * l;
                shrink(q + (e1 * std::cos(phi) + e2 * std::sin(phi)) * e.rho);
            }
    }
}

double HullBody3::max_dist2_to_edges(std::span<const double> p) const {
    const V3 pp = at(p);
    double worst = 0.0;
    for (const auto& e : edges_) {
        const V3 q{e.qx, e.qy, e.qz};
        const V3 e1{e.e1x, e.e1y, e.e1z};
        const V3 e2{e.e2x, e.e2y, e.e2z};
        const V3 w = pp - q;
        const double base = w.dot(w) + e.rho * e.rho;
        const double w1 = w.dot(e1), w2 = w.dot(e2);
        // dist^2(phi) = base - 2 rho (w1 cos phi + w2 sin phi)
        const double peak = std::atan2(-w2, -w1);
        for (const auto& [a, l] : e.intervals) {
            double cand = std::max(
                base - 2.0 * e.rho * (w1 * std::cos(a) + w2 * std::sin(a)),
                base - 2.0 * e.rho * (w1 * std::cos(a + l) + w2 * std::sin(a + l)));
            if (angle_in_ccw_range(peak, wrap_angle(a), l, 0.0))
                cand = std::max(cand, base + 2.0 * e.rho * std::hypot(w1, w2));
            worst = std::max(worst, cand);
        }
    }
    return worst;
}

bool HullBody3::contains(std::span<const double> p, double tol_geom) const {
    switch (kind_) {
    case Kind::Empty:
        return false;
    case Kind::Point: {
        double d2 = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double dd = p[static_cast<std::size_t>(c)] - anchor_[static_cast<std::size_t>(c)];
            d2 += dd * dd;
        }
        return d2 <= tol_geom * tol_geom;
    }
    case Kind::FullBall: {
        double d2 = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double dd = p[static_cast<std::size_t>(c)] - anchor_[static_cast<std::size_t>(c)];
            d2 += dd * dd;
        }
        return d2 <= (r_ + tol_geom) * (r_ + tol_geom);
    }
    case Kind::Region:
        return max_dist2_to_edges(p) <= (r_ + tol_geom) * (r_ + tol_geom);
    }
    return false;
}

VkEstimate HullBody3::volume_mc(long long n_samples, uint64_t seed) const {
    VkEstimate est;
    est.k = 3;
    est.method = VkEstimate::Method::monte_carlo;
    est.samples = n_samples;
    est.seed = seed;
    if (kind_ == Kind::Empty || kind_ == Kind::Point)
        return est;
    if (kind_ == Kind::FullBall) {
        est.value = omega(3) * r_ * r_ * r_;
        return est;
    }
    double boxvol = 1.0;
    for (int c = 0; c < 3; ++c)
        boxvol *= std::max(0.0, box_hi_[static_cast<std::size_t>(c)] - box_lo_[static_cast<std::size_t>(c)]);
    const long long chunk = 65536;
    long long hits = 0;
    double p[3];
    for (long long start = 0, ci = 0; start < n_samples; start += chunk, ++ci) {
        Rng rng(mix_seed(seed, static_cast<uint64_t>(ci)));
        const long long m = std::min(chunk, n_samples - start);
        for (long long s = 0; s < m; ++s) {
            for (int c = 0; c < 3; ++c)
                p[c] = rng.uniform(box_lo_[static_cast<std::size_t>(c)], box_hi_[static_cast<std::size_t>(c)]);
            if (contains({p, 3}, 0.0))
                ++hits;
        }
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(n_samples);
    est.value = boxvol * phat;
    est.std_error = boxvol * std::sqrt(std::max(0.0, phat * (1.0 - phat) / n_samples));
    return est;
}

double spindle3_volume(double r, double t) {
    if (!(r > 0.0) || !(t >= 0.0 && t <= 2.0 * r))
        throw std::domain_error("spindle3_volume: need 0 <= t <= 2r");
    const double c0 = std::sqrt(std::max(0.0, r * r - 0.25 * t * t));
    return kPi * (r * r * t - t * t * t / 12.0 - 2.0 * c0 * r * r * std::asin(t / (2.0 * r)));
}

double spindle3_gap_for_volume(double r, double v) {
    if (!(v > 0.0 && v < omega(3) * r * r * r))
        throw std::domain_error("spindle3_gap_for_volume: volume out of range");
    double lo = 0.0, hi = 2.0 * r;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (spindle3_volume(r, mid) < v)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace rball
