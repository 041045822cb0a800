#include "core/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rball {

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("inverse_normal_cdf: p must be in (0, 1)");

    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double plow = 0.02425;
    double q, r, x;
    if (p < plow) {
        q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        q = p - 0.5;
        r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    return x;
}

double halton(uint64_t index, uint32_t base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

std::vector<std::vector<double>> sphere_directions(int dim, int count) {
    if (dim < 2 || dim > 8)
        throw std::domain_error("sphere_directions: dimension must be in [2, 8]");
    if (count < 1)
        throw std::domain_error("sphere_directions: count must be positive");

    std::vector<std::vector<double>> dirs;
    dirs.reserve(static_cast<std::size_t>(count));

    if (dim == 2) {
        for (int i = 0; i < count; ++i) {
            const double t = kTwoPi * (i + 0.5) / count;
            dirs.push_back({std::cos(t), std::sin(t)});
        }
        return dirs;
    }
    if (dim == 3) {
        // spherical Fibonacci lattice
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        for (int i = 0; i < count; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / count;
            const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double phi = kTwoPi * std::fmod(i / golden, 1.0);
            dirs.push_back({rxy * std::cos(phi), rxy * std::sin(phi), z});
        }
        return dirs;
    }

    static const uint32_t primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    for (int i = 0; i < count; ++i) {
        std::vector<double> u(static_cast<std::size_t>(dim));
        double n2 = 0.0;
        for (int c = 0; c < dim; ++c) {
            double h = halton(static_cast<uint64_t>(i) + 31, primes[c]);
            h = std::min(std::max(h, 1e-12), 1.0 - 1e-12);
            u[static_cast<std::size_t>(c)] = inverse_normal_cdf(h);
            n2 += u[static_cast<std::size_t>(c)] * u[static_cast<std::size_t>(c)];
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& c : u)
            c *= inv;
        dirs.push_back(std::move(u));
    }
    return dirs;
}

} // namespace rball
