#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rball {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Raised when an iterative routine hits its cap without meeting its
// certified stopping rule. Callers must never see a silently wrong value.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double geom = 1e-9;   // geometric coincidence
    double merge = 1e-12; // point dedup
    double check = 1e-9;  // inequality slack in verification

    void validate() const;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }

    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    double angle() const { return std::atan2(y, x); }
    Vec2 perp() const { return {-y, x}; }
    Vec2 rotated(double a) const {
        const double c = std::cos(a), s = std::sin(a);
        return {c * x - s * y, s * x + c * y};
    }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }
inline Vec2 unit_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

struct Ball {
    std::vector<double> center;
    double radius = 0.0;
};

// Finite generator set: the input to every r-ball construction.
// Construction dedups points under tol.merge and enforces the dimension cap.
class PointSet {
public:
    PointSet(int dim, double radius, std::vector<std::vector<double>> points,
             const Tolerances& tol = {});

    static PointSet from_vec2(double radius, std::span<const Vec2> points,
                              const Tolerances& tol = {});

    int dim() const { return dim_; }
    double radius() const { return radius_; }
    std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
    std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * static_cast<std::size_t>(dim_),
                static_cast<std::size_t>(dim_)};
    }
    std::span<const double> flat() const { return coords_; }
    Vec2 point2(std::size_t i) const {
        auto p = point(i);
        return {p[0], p[1]};
    }
    std::vector<Vec2> as_vec2() const;

private:
    int dim_;
    double radius_;
    std::vector<double> coords_; // row-major, size() * dim_
};

// Volume of the d-dimensional unit ball, pi^(d/2) / Gamma(1 + d/2).
double omega(int d);

double binomial(int n, int k);

// k-th intrinsic volume of a d-ball of the given radius:
// binom(d,k) * omega(d) / omega(d-k) * radius^k, with omega(0) = 1.
// Conventions: V_d = volume, 2 V_{d-1} = surface area,
// mean width = 2 omega(d-1) / (d omega(d)) * V_1.
double ball_intrinsic_volume(int d, int k, double radius);

// d * omega(d) / (2 * omega(d-1)): converts mean width to V_1.
double mean_width_factor(int d);

// Wraps an angle into [0, 2*pi).
double wrap_angle(double a);

// Counterclockwise angular distance from `from` to `to`, in [0, 2*pi).
double ccw_delta(double from, double to);

// True if the angle lies within [start, start+extent] going counterclockwise,
// with `tol` of slack at both ends.
bool angle_in_ccw_range(double a, double start, double extent, double tol);

// definite integral of cos^m(t) * sin^n(t) over [a, b], exact reduction formulas
double trig_power_integral(int m, int n, double a, double b);

uint64_t splitmix64(uint64_t x);
uint64_t mix_seed(uint64_t seed, uint64_t stream);
uint64_t hash_doubles(std::span<const double> xs, uint64_t seed = 0x9e3779b97f4a7c15ull);

} // namespace rball
