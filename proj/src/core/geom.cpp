#include "core/geom.hpp"

#include <algorithm>
#include <cstring>

namespace rball {

void Tolerances::validate() const {
    if (!(geom > 0.0) || !(merge > 0.0) || !(check > 0.0))
        throw std::invalid_argument("tolerances must be positive");
    if (!(merge <= geom && geom <= check))
        throw std::invalid_argument("tolerances must satisfy merge <= geom <= check");
}

PointSet::PointSet(int dim, double radius, std::vector<std::vector<double>> points,
                   const Tolerances& tol)
    : dim_(dim), radius_(radius) {
    tol.validate();
    if (dim < 2 || dim > 8)
        throw std::invalid_argument("point set dimension must be in [2, 8]");
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::invalid_argument("point set radius must be positive and finite");
    if (points.empty())
        throw std::invalid_argument("point set must be nonempty");
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument("point dimension mismatch");
        for (double c : p)
            if (!std::isfinite(c))
                throw std::invalid_argument("point coordinates must be finite");
    }
    // O(n^2) dedup under tol.merge; generator counts stay at desk scale.
    const double merge2 = tol.merge * tol.merge;
    for (const auto& p : points) {
        bool dup = false;
        for (std::size_t i = 0; i < size() && !dup; ++i) {
            double d2 = 0.0;
            auto q = point(i);
            for (int c = 0; c < dim; ++c) {
                const double d = p[static_cast<std::size_t>(c)] - q[static_cast<std::size_t>(c)];
                d2 += d * d;
            }
            dup = d2 <= merge2;
        }
        if (!dup)
            coords_.insert(coords_.end(), p.begin(), p.end());
    }
}

PointSet PointSet::from_vec2(double radius, std::span<const Vec2> points, const Tolerances& tol) {
    std::vector<std::vector<double>> pts;
    pts.reserve(points.size());
    for (Vec2 p : points)
        pts.push_back({p.x, p.y});
    return PointSet(2, radius, std::move(pts), tol);
}

std::vector<Vec2> PointSet::as_vec2() const {
    if (dim_ != 2)
        throw std::invalid_argument("2D view of a non-2D point set");
    std::vector<Vec2> out(size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = point2(i);
    return out;
}

double omega(int d) {
    if (d < 0)
        throw std::domain_error("omega: dimension must be nonnegative");
    if (d == 0)
        return 1.0;
    return std::pow(kPi, 0.5 * d) / std::tgamma(1.0 + 0.5 * d);
}

double binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

double ball_intrinsic_volume(int d, int k, double radius) {
    if (d < 1)
        throw std::domain_error("ball_intrinsic_volume: dimension must be >= 1");
    if (k < 1 || k > d)
        throw std::domain_error("ball_intrinsic_volume: k out of range [1, d]");
    if (radius < 0.0)
        throw std::domain_error("ball_intrinsic_volume: radius must be nonnegative");
    return binomial(d, k) * omega(d) / omega(d - k) * std::pow(radius, k);
}

double mean_width_factor(int d) {
    if (d < 2)
        throw std::domain_error("mean_width_factor: dimension must be >= 2");
    return d * omega(d) / (2.0 * omega(d - 1));
}

double wrap_angle(double a) {
    double w = std::fmod(a, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    if (w >= kTwoPi)
        w = 0.0;
    return w;
}

double ccw_delta(double from, double to) {
    return wrap_angle(to - from);
}

bool angle_in_ccw_range(double a, double start, double extent, double tol) {
    if (extent >= kTwoPi - 1e-15)
        return true;
    const double d = ccw_delta(start, a);
    return d <= extent + tol || d >= kTwoPi - tol;
}

double trig_power_integral(int m, int n, double a, double b) {
    if (m < 0 || n < 0)
        throw std::domain_error("trig_power_integral: negative exponent");
    if (n >= 2) {
        const double ca = std::cos(a), sa = std::sin(a);
        const double cb = std::cos(b), sb = std::sin(b);
        const double boundary =
            (-std::pow(cb, m + 1) * std::pow(sb, n - 1) + std::pow(ca, m + 1) * std::pow(sa, n - 1)) /
            (m + n);
        return boundary + double(n - 1) / (m + n) * trig_power_integral(m, n - 2, a, b);
    }
    if (m >= 2) {
        const double ca = std::cos(a), sa = std::sin(a);
        const double cb = std::cos(b), sb = std::sin(b);
        const double boundary =
            (std::pow(cb, m - 1) * std::pow(sb, n + 1) - std::pow(ca, m - 1) * std::pow(sa, n + 1)) /
            (m + n);
        return boundary + double(m - 1) / (m + n) * trig_power_integral(m - 2, n, a, b);
    }
    if (m == 0 && n == 0)
        return b - a;
    if (m == 1 && n == 0)
        return std::sin(b) - std::sin(a);
    if (m == 0 && n == 1)
        return std::cos(a) - std::cos(b);
    const double sa = std::sin(a), sb = std::sin(b);
    return 0.5 * (sb * sb - sa * sa);
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ (0x6a09e667f3bcc909ull + stream));
}

uint64_t hash_doubles(std::span<const double> xs, uint64_t seed) {
    uint64_t h = seed;
    for (double x : xs) {
        uint64_t bits;
        std::memcpy(&bits, &x, sizeof(bits));
        h = splitmix64(h ^ bits);
    }
    return h;
}

} // namespace rball
