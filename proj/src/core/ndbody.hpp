#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/geom.hpp"
#include "core/welzl.hpp"

namespace rball {

// Intrinsic-volume value with provenance. Identical seed and parameters
// replay bit-identically.
struct VkEstimate {
    enum class Method { exact2d, monte_carlo, mean_width, steiner_fit };
    int k = 0;
    double value = 0.0;
    double std_error = 0.0;
    Method method = Method::monte_carlo;
    long long samples = 0;
    uint64_t seed = 0;
};

const char* to_string(VkEstimate::Method m);

// Finite-generator r-ball body in dimension d (2 <= d <= 8). Nonempty iff the
// minimal enclosing ball radius of the generators is at most r; the bounding
// box is the intersection of the generators' ball boxes.
class NdBallBody {
public:
    explicit NdBallBody(PointSet generators, const Tolerances& tol = {});

    int dim() const { return gens_.dim(); }
    double radius() const { return gens_.radius(); }
    const PointSet& generators() const { return gens_; }
    const MinBall& enclosing_ball() const { return meb_; }

    bool nonempty() const { return nonempty_; }
    // circumradius within tol.geom of r: the body degenerates to a point
    bool is_point() const { return degenerate_point_; }

    std::span<const double> box_lo() const { return box_lo_; }
    std::span<const double> box_hi() const { return box_hi_; }
    double box_volume() const;

    bool contains(std::span<const double> p, double tol_geom) const;

    // worst constraint violation max_i |p - x_i| - r
    double violation(std::span<const double> p) const;

    std::vector<double> feasible_point() const { return meb_.center; }

private:
    PointSet gens_;
    Tolerances tol_;
    MinBall meb_;
    bool nonempty_ = false;
    bool degenerate_point_ = false;
    std::vector<double> box_lo_, box_hi_;
};

// Dykstra-corrected cyclic projection onto the intersection of the generator
// balls. Returns the metric projection of q within `eps` feasibility residual.
std::vector<double> project_onto_body(const NdBallBody& body, std::span<const double> q,
                                      double eps, int max_cycles = 2000);

// Euclidean distance from p to the body (0 if inside).
double distance_to_body(const NdBallBody& body, std::span<const double> p, double eps = 1e-10);

// max <p, u> over the body, within additive error `tol`, by projected ascent
// with a halving step schedule. Deterministic; throws ConvergenceError if the
// iteration cap is reached before the certified stopping rule fires.
double support_nd(const NdBallBody& body, std::span<const double> u, double tol);

// hit-or-miss Monte Carlo volume over the bounding box; deterministic per
// seed and independent of chunking order.
VkEstimate estimate_vd_nd(const NdBallBody& body, long long n_samples, uint64_t seed);

// V_1 from the mean width: quasi-uniform direction sweep of support values,
// scaled by d omega_d / (2 omega_{d-1}).
VkEstimate estimate_v1_nd(const NdBallBody& body, int n_directions, double tol);

// V_k from a least-squares fit of the Steiner polynomial
// vol(body + t B) = sum_j omega_j V_{d-j} t^j on the given t grid. Membership
// in the dilate uses the projection distance, not generator-radius inflation.
VkEstimate steiner_vk_nd(const NdBallBody& body, int k, std::span<const double> t_grid,
                         long long n_samples, uint64_t seed);

struct MatchingBall {
    enum class DualKind { Ball, Point, Empty };
    double rho = 0.0;        // radius of the volume-matched ball
    DualKind dual = DualKind::Ball;
    double dual_radius = 0.0; // r - rho when dual is a ball
};

// Ball of the given d-volume together with the exact description of its
// r-ball dual: B^r = B[o, r - rho] when rho < r, a point at rho = r, empty
// beyond.
MatchingBall matching_ball(double body_volume, int d, double r, const Tolerances& tol = {});

// m exact boundary points of the body, ray-cast from the enclosing-ball
// center along a deterministic quasi-uniform direction lattice.
std::vector<double> boundary_sample_nd(const NdBallBody& body, int m);

} // namespace rball
