#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/arcpoly.hpp"
#include "core/geom.hpp"

namespace rball {

// Constrained minimization of V_k(A^r) over n-generator r-ball bodies of
// fixed volume. 2D runs against the exact kernel; 3D is exploratory (the
// minimizer there is an open question, so no optimality is claimed).
struct SearchConfig {
    int dim = 2;
    double r = 1.0;
    int k = 1;
    double target_volume = 1.0;
    int n_generators = 2;
    int restarts = 20;
    long long max_evals = 20000; // per restart, across penalty stages
    uint64_t seed = 0;
    double init_scale = 0.5;       // restart sampling radius as a fraction of r
    double simplex_scale = 0.2;    // initial simplex edge as a fraction of r
    double converge_spread = 1e-12;
    std::vector<double> penalty_schedule = {1e2, 1e3, 1e4, 1e5};
    long long polish_evals = 4000; // volume-projected descent after the stages
    long long mc_samples = 20000;  // 3D objective volume samples
    int mc_directions = 96;        // 3D k=1 mean-width directions
    double support_tol = 1e-5;
    Tolerances tol;

    void validate() const;
};

struct SearchResult {
    std::vector<double> best_generators; // flat, row-major
    int dim = 2;
    double r = 1.0;
    int k = 1;
    double best_objective = 0.0;
    double constraint_residual = 0.0;
    double baseline = 0.0;
    double gap = 0.0;
    std::vector<std::vector<double>> trace; // per restart, monotone best-so-far
    std::optional<ArcPolygon> normalized_shape; // 2D regions only
    bool feasible = false;
    bool exploratory = false; // 3D: the problem is open, values are evidence only
    std::string note;
    uint64_t seed = 0;
};

// V_k(A^r) + penalty (V_d(A) - v)^2 for A = conv_r of the decoded generators.
// An empty hull returns the finite sentinel 2 V_k(B[o,r]) plus the full
// penalty so the search surface stays bounded. 3D volumes are Monte Carlo
// with seeds derived from the coordinate hash, making the objective a pure
// function of the coordinates.
double search_objective(const SearchConfig& config, std::span<const double> coords,
                        double penalty);

SearchResult minimize(const SearchConfig& config);

// V_k(L^r) for the lens L of area v: the proven 2D minimum.
double lens_baseline(double r, double v, int k);

// coordinates <-> generators with translation and one rotation pinned
// (first generator at the origin, second on the first axis)
std::vector<std::vector<double>> decode_generators(const SearchConfig& config,
                                                   std::span<const double> coords);
int coordinate_count(const SearchConfig& config);

} // namespace rball
