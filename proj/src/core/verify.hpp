#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "core/ball2d.hpp"
#include "core/geom.hpp"

namespace rball {

enum class GeneratorLaw { UniformDisk, Gaussian, Clustered };

const char* to_string(GeneratorLaw law);
GeneratorLaw generator_law_from_string(const std::string& s);

// Knobs for one randomized check family. Identical specs replay identically.
struct TrialSpec {
    int dim = 2;
    double r = 1.0;
    int min_generators = 2;
    int max_generators = 8;
    GeneratorLaw law = GeneratorLaw::UniformDisk;
    double law_scale = 0.6; // generator spread as a fraction of r
    long long trials = 1000;
    uint64_t seed = 0;
    int probes = 1000;         // membership probes per trial (identities)
    double target_area = -1.0; // fixed area for the 2D minimization check
    long long mc_samples = 200000; // nD Monte Carlo volume samples
    int mc_directions = 400;       // nD mean-width directions
    double support_tol = 1e-6;     // nD support ascent tolerance
    Tolerances tol;

    void validate() const;
};

struct TrialRecord {
    long long index = 0;
    std::string kind; // "random", "anchor:disk", "anchor:lens", ...
    uint64_t input_hash = 0;
    std::vector<std::pair<std::string, double>> values;
    double slack = 0.0;
    bool violation = false;
    bool near_equality = false;
    double congruence_dist = -1.0; // -1: not evaluated
};

struct CheckReport {
    std::string check_name;
    int k = 0;
    int dim = 2;
    double r = 1.0;
    uint64_t seed = 0;
    long long trials_run = 0;
    long long resampled = 0;
    long long discarded = 0;
    long long violations = 0;
    long long equality_cases = 0;
    long long equality_failures = 0;
    double worst_margin = 1e300; // most negative slack observed (min slack)
    std::vector<TrialRecord> records;

    bool passed() const { return violations == 0; }
    void absorb(TrialRecord rec, double tol_geom = 1e-9);
};

// A random r-ball body produced as conv_r of sampled generators, plus the
// generators themselves.
struct SampledBody {
    PointSet generators;
    BallBody hull;
};

// Samples generator sets until the hull is a region; counts resamples.
SampledBody sample_rball_body_2d(const TrialSpec& spec, uint64_t trial_seed,
                                 long long* resampled);

// Rescales the generators about their centroid (re-hulling at every step)
// until the hull area hits `v` within 1e-6; nullopt when unreachable.
// Root-finding on the homothety parameter, not on the body itself: a fixed r
// breaks plain scaling.
std::optional<SampledBody> retarget_area_2d(const SampledBody& body, double v,
                                            const TrialSpec& spec);

// V_k(A^r) <= V_k(B^r) for the volume-matched ball B, with congruence checked
// on near-equality trials (2D exact; d=3 via Monte Carlo under a 3-sigma rule).
CheckReport check_blaschke_santalo(const TrialSpec& spec, int k);

// P_k(A) = V_k(A) V_k(A^r) <= P_k(B[o, r/2]).
CheckReport check_product(const TrialSpec& spec, int k);

// x^k (r-x)^k, the ball-family profile behind the product bound; unique
// maximum at x = r/2.
double product_profile(double x, int k, double r);

// |h_A(u) + h_{A^r}(-u) - r| over 720 directions (Minkowski-sum identity).
CheckReport check_support_identity(const TrialSpec& spec);

// triple-dual idempotence, union intersection law, order reversal, hull-dual
// equality, and the emptiness biconditional on engineered straddle inputs
CheckReport check_identities(const TrialSpec& spec);

// V_k(A^r) >= V_k(L^r) at fixed area, L the lens of that area; equality only
// at lens-congruent bodies.
CheckReport check_mahler_2d(const TrialSpec& spec, int k);

} // namespace rball
