#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "core/geom.hpp"

namespace rball {

// Deterministic random source. mt19937_64 is fully specified by the standard
// and the double mappings below avoid std::uniform_real_distribution, whose
// output is implementation-defined. Identical seeds replay bit-identically.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1), 53-bit mantissa
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double normal() {
        // Box-Muller; consumes two uniforms, second variate discarded for
        // replay simplicity.
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        return r * std::cos(kTwoPi * u2);
    }

    Vec2 in_unit_disk() {
        for (;;) {
            const Vec2 p{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
            if (p.norm2() <= 1.0)
                return p;
        }
    }

    std::vector<double> in_unit_ball(int dim) {
        for (;;) {
            std::vector<double> p(static_cast<std::size_t>(dim));
            double n2 = 0.0;
            for (auto& c : p) {
                c = uniform(-1.0, 1.0);
                n2 += c * c;
            }
            if (n2 <= 1.0)
                return p;
        }
    }

private:
    std::mt19937_64 eng_;
};

// Acklam's rational approximation of the inverse normal CDF (~1.15e-9 rel. error),
// used to map low-discrepancy cube points onto the sphere.
double inverse_normal_cdf(double p);

double halton(uint64_t index, uint32_t base);

// Deterministic quasi-uniform unit directions on S^{d-1}:
// d=2 equiangular, d=3 spherical Fibonacci lattice, d>=4 Halton + inverse
// normal CDF + normalization.
std::vector<std::vector<double>> sphere_directions(int dim, int count);

} // namespace rball
