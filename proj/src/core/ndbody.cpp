#include "core/ndbody.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/rng.hpp"

namespace rball {

const char* to_string(VkEstimate::Method m) {
    switch (m) {
    case VkEstimate::Method::exact2d: return "exact2d";
    case VkEstimate::Method::monte_carlo: return "monte_carlo";
    case VkEstimate::Method::mean_width: return "mean_width";
    case VkEstimate::Method::steiner_fit: return "steiner_fit";
    }
    return "unknown";
}

NdBallBody::NdBallBody(PointSet generators, const Tolerances& tol)
    : gens_(std::move(generators)), tol_(tol) {
    meb_ = min_enclosing_ball(gens_);
    nonempty_ = meb_.radius <= gens_.radius() + tol.geom;
    degenerate_point_ = nonempty_ && meb_.radius >= gens_.radius() - tol.geom;
    const int d = gens_.dim();
    box_lo_.assign(static_cast<std::size_t>(d), -1e300);
    box_hi_.assign(static_cast<std::size_t>(d), 1e300);
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        auto p = gens_.point(i);
        for (int c = 0; c < d; ++c) {
            box_lo_[static_cast<std::size_t>(c)] =
                std::max(box_lo_[static_cast<std::size_t>(c)], p[static_cast<std::size_t>(c)] - gens_.radius());
            box_hi_[static_cast<std::size_t>(c)] =
                std::min(box_hi_[static_cast<std::size_t>(c)], p[static_cast<std::size_t>(c)] + gens_.radius());
        }
    }
}

double NdBallBody::box_volume() const {
    double v = 1.0;
    for (std::size_t c = 0; c < box_lo_.size(); ++c)
        v *= std::max(0.0, box_hi_[c] - box_lo_[c]);
    return v;
}

bool NdBallBody::contains(std::span<const double> p, double tol_geom) const {
    if (!nonempty_)
        return false;
    const double r2 = (gens_.radius() + tol_geom) * (gens_.radius() + tol_geom);
    const int d = dim();
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        auto x = gens_.point(i);
        double d2 = 0.0;
        for (int c = 0; c < d; ++c) {
            const double dd = p[static_cast<std::size_t>(c)] - x[static_cast<std::size_t>(c)];
            d2 += dd * dd;
        }
        if (d2 > r2)
            return false;
    }
    return true;
}

double NdBallBody::violation(std::span<const double> p) const {
    const int d = dim();
    double worst = -1e300;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        auto x = gens_.point(i);
        double d2 = 0.0;
        for (int c = 0; c < d; ++c) {
            const double dd = p[static_cast<std::size_t>(c)] - x[static_cast<std::size_t>(c)];
            d2 += dd * dd;
        }
        worst = std::max(worst, std::sqrt(d2) - gens_.radius());
    }
    return worst;
}

std::vector<double> project_onto_body(const NdBallBody& body, std::span<const double> q,
                                      double eps, int max_cycles) {
    const int d = body.dim();
    const double r = body.radius();
    const std::size_t n = body.generators().size();
    std::vector<double> x(q.begin(), q.end());

    // Constraints enter the Dykstra cycle lazily: a full scan promotes every
    // violated ball, then the small active set is cycled to convergence.
    // Generator counts reach 10^4 for sampled hull approximations, where only
    // a handful of balls are ever active. Past a few dozen active constraints
    // the Dykstra corrections are dropped: plain cyclic projection reaches
    // feasibility faster, and the metric-projection refinement only matters
    // for the small systems the distance queries use.
    std::vector<std::size_t> active;
    std::vector<double> corr; // parallel to active, d entries each
    std::vector<double> y(static_cast<std::size_t>(d));
    const double r2 = (r + eps) * (r + eps);
    bool use_corrections = true;

    int cycles_used = 0;
    for (int outer = 0; outer < 64; ++outer) {
        for (std::size_t i = 0; i < n; ++i) {
            auto c = body.generators().point(i);
            double d2 = 0.0;
            for (int k = 0; k < d; ++k) {
                const double dd = x[static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)];
                d2 += dd * dd;
            }
            if (d2 > r2 &&
                std::find(active.begin(), active.end(), i) == active.end()) {
                active.push_back(i);
                corr.resize(active.size() * static_cast<std::size_t>(d), 0.0);
            }
        }
        if (body.violation(x) <= eps)
            return x;
        if (active.size() > 64 && use_corrections) {
            use_corrections = false;
            std::fill(corr.begin(), corr.end(), 0.0);
        }

        bool settled = false;
        while (cycles_used < max_cycles) {
            ++cycles_used;
            double moved = 0.0, active_viol = 0.0;
            for (std::size_t ai = 0; ai < active.size(); ++ai) {
                double* e = corr.data() + ai * static_cast<std::size_t>(d);
                auto c = body.generators().point(active[ai]);
                double dist2 = 0.0;
                for (int k = 0; k < d; ++k) {
                    y[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)] + e[k];
                    const double dd = y[static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)];
                    dist2 += dd * dd;
                }
                const double dn = std::sqrt(dist2);
                if (dn > r) {
                    const double f = r / dn;
                    for (int k = 0; k < d; ++k) {
                        const double xn = c[static_cast<std::size_t>(k)] +
                                          f * (y[static_cast<std::size_t>(k)] -
                                               c[static_cast<std::size_t>(k)]);
                        e[k] = use_corrections ? y[static_cast<std::size_t>(k)] - xn : 0.0;
                        moved += std::fabs(xn - x[static_cast<std::size_t>(k)]);
                        x[static_cast<std::size_t>(k)] = xn;
                    }
                } else {
                    for (int k = 0; k < d; ++k) {
                        moved += std::fabs(y[static_cast<std::size_t>(k)] - x[static_cast<std::size_t>(k)]);
                        x[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(k)];
                        e[k] = 0.0;
                    }
                }
                double v2now = 0.0;
                for (int k = 0; k < d; ++k) {
                    const double dd = x[static_cast<std::size_t>(k)] - c[static_cast<std::size_t>(k)];
                    v2now += dd * dd;
                }
                active_viol = std::max(active_viol, std::sqrt(v2now) - r);
            }
            // feasibility of the active set is the primary stop; the Dykstra
            // corrections refine toward the metric projection while it lasts
            if (active_viol <= 0.5 * eps || moved <= 1e-16) {
                settled = true;
                break;
            }
        }
        if (!settled)
            break;
    }
    if (body.violation(x) <= eps)
        return x;
    throw ConvergenceError("project_onto_body: cyclic projection did not converge");
}

double distance_to_body(const NdBallBody& body, std::span<const double> p, double eps) {
    if (!body.nonempty())
        throw std::domain_error("distance_to_body: empty body");
    if (body.contains(p, 0.0))
        return 0.0;
    const auto x = project_onto_body(body, p, eps);
    double d2 = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dd = p[k] - x[k];
        d2 += dd * dd;
    }
    return std::sqrt(d2);
}

double support_nd(const NdBallBody& body, std::span<const double> u, double tol) {
    if (!body.nonempty())
        throw std::domain_error("support_nd: empty body");
    if (!(tol > 0.0))
        throw std::domain_error("support_nd: tolerance must be positive");
    const int d = body.dim();
    if (static_cast<int>(u.size()) != d)
        throw std::domain_error("support_nd: direction dimension mismatch");
    double n2 = 0.0;
    for (double c : u)
        n2 += c * c;
    if (std::fabs(std::sqrt(n2) - 1.0) > 1e-6)
        throw std::domain_error("support_nd: direction must be a unit vector");

    std::vector<double> x = body.feasible_point();
    auto dot_u = [&](const std::vector<double>& p) {
        double s = 0.0;
        for (int k = 0; k < d; ++k)
            s += p[static_cast<std::size_t>(k)] * u[static_cast<std::size_t>(k)];
        return s;
    };
    double best = dot_u(x);
    const double step_min = std::max(tol * 0.25, 1e-13);
    const double proj_eps = std::clamp(tol * 1e-3, 1e-12, 1e-9);
    std::vector<double> q(static_cast<std::size_t>(d));
    // halving step schedule, at most 64 accepted moves per level; progress
    // below the projection noise floor does not count as an accept
    for (double step = body.radius(); step >= step_min; step *= 0.5) {
        const double accept_gain = std::max(1e-3 * step * step / body.radius(), 1e-14);
        for (int tries = 0; tries < 64; ++tries) {
            for (int k = 0; k < d; ++k)
                q[static_cast<std::size_t>(k)] =
                    x[static_cast<std::size_t>(k)] + step * u[static_cast<std::size_t>(k)];
            std::vector<double> proj = project_onto_body(body, q, proj_eps);
            const double val = dot_u(proj);
            if (val > best + accept_gain) {
                x = std::move(proj);
                best = val;
            } else {
                break;
            }
        }
    }
    return best;
}

VkEstimate estimate_vd_nd(const NdBallBody& body, long long n_samples, uint64_t seed) {
    if (n_samples < 1000)
        throw std::domain_error("estimate_vd_nd: need at least 1000 samples");
    const int d = body.dim();
    VkEstimate est;
    est.k = d;
    est.method = VkEstimate::Method::monte_carlo;
    est.samples = n_samples;
    est.seed = seed;
    if (!body.nonempty())
        return est; // V_k of the empty set is 0, exactly
    const double boxvol = body.box_volume();
    if (boxvol <= 0.0)
        return est;

    const long long chunk = 65536;
    long long hits = 0;
    std::vector<double> p(static_cast<std::size_t>(d));
    for (long long start = 0, ci = 0; start < n_samples; start += chunk, ++ci) {
        Rng rng(mix_seed(seed, static_cast<uint64_t>(ci)));
        const long long m = std::min(chunk, n_samples - start);
        for (long long s = 0; s < m; ++s) {
            for (int c = 0; c < d; ++c)
                p[static_cast<std::size_t>(c)] =
                    rng.uniform(body.box_lo()[static_cast<std::size_t>(c)],
                                body.box_hi()[static_cast<std::size_t>(c)]);
            if (body.contains(p, 0.0))
                ++hits;
        }
    }
    const double phat = static_cast<double>(hits) / static_cast<double>(n_samples);
    est.value = boxvol * phat;
    est.std_error = boxvol * std::sqrt(std::max(0.0, phat * (1.0 - phat) / n_samples));
    return est;
}

VkEstimate estimate_v1_nd(const NdBallBody& body, int n_directions, double tol) {
    if (!body.nonempty())
        throw std::domain_error("estimate_v1_nd: empty body");
    if (n_directions < 2)
        throw std::domain_error("estimate_v1_nd: need at least 2 directions");
    const int d = body.dim();
    const auto dirs = sphere_directions(d, n_directions);
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> neg(static_cast<std::size_t>(d));
    for (const auto& u : dirs) {
        for (int c = 0; c < d; ++c)
            neg[static_cast<std::size_t>(c)] = -u[static_cast<std::size_t>(c)];
        const double w = support_nd(body, u, tol) + support_nd(body, neg, tol);
        sum += w;
        sum2 += w * w;
    }
    const double n = static_cast<double>(n_directions);
    const double mean_w = sum / n;
    const double var = std::max(0.0, sum2 / n - mean_w * mean_w);
    VkEstimate est;
    est.k = 1;
    est.method = VkEstimate::Method::mean_width;
    est.samples = n_directions;
    est.seed = 0;
    est.value = mean_width_factor(d) * mean_w;
    est.std_error = mean_width_factor(d) * std::sqrt(var / n);
    return est;
}

namespace {

// sigma-weighted least squares fit of val ~ sum_j coeff_j t^j with error
// propagation; returns false when the system is too ill-conditioned
bool polyfit(std::span<const double> ts, std::span<const double> vals_in,
             std::span<const double> sigmas, int degree, std::vector<double>& coeff,
             std::vector<double>& coeff_sigma, double& condition) {
    const int rows = static_cast<int>(ts.size());
    const int cols = degree + 1;
    std::vector<double> weight(static_cast<std::size_t>(rows));
    double sigma_floor = 1e300;
    for (int i = 0; i < rows; ++i)
        if (sigmas[static_cast<std::size_t>(i)] > 0.0)
            sigma_floor = std::min(sigma_floor, sigmas[static_cast<std::size_t>(i)]);
    if (sigma_floor > 1e299)
        sigma_floor = 1.0;
    std::vector<double> vals(vals_in.begin(), vals_in.end());
    for (int i = 0; i < rows; ++i) {
        weight[static_cast<std::size_t>(i)] =
            1.0 / std::max(sigmas[static_cast<std::size_t>(i)], 0.1 * sigma_floor);
        vals[static_cast<std::size_t>(i)] *= weight[static_cast<std::size_t>(i)];
    }
    std::vector<double> a(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            a[static_cast<std::size_t>(i) * cols + j] =
                weight[static_cast<std::size_t>(i)] * std::pow(ts[static_cast<std::size_t>(i)], j);

    // modified Gram-Schmidt QR
    std::vector<double> qmat = a, rmat(static_cast<std::size_t>(cols) * cols, 0.0);
    for (int j = 0; j < cols; ++j) {
        double nrm = 0.0;
        for (int i = 0; i < rows; ++i)
            nrm += qmat[static_cast<std::size_t>(i) * cols + j] * qmat[static_cast<std::size_t>(i) * cols + j];
        nrm = std::sqrt(nrm);
        rmat[static_cast<std::size_t>(j) * cols + j] = nrm;
        if (nrm < 1e-300)
            return false;
        for (int i = 0; i < rows; ++i)
            qmat[static_cast<std::size_t>(i) * cols + j] /= nrm;
        for (int l = j + 1; l < cols; ++l) {
            double dp = 0.0;
            for (int i = 0; i < rows; ++i)
                dp += qmat[static_cast<std::size_t>(i) * cols + j] * qmat[static_cast<std::size_t>(i) * cols + l];
            rmat[static_cast<std::size_t>(j) * cols + l] = dp;
            for (int i = 0; i < rows; ++i)
                qmat[static_cast<std::size_t>(i) * cols + l] -= dp * qmat[static_cast<std::size_t>(i) * cols + j];
        }
    }
    double dmax = 0.0, dmin = 1e300;
    for (int j = 0; j < cols; ++j) {
        dmax = std::max(dmax, std::fabs(rmat[static_cast<std::size_t>(j) * cols + j]));
        dmin = std::min(dmin, std::fabs(rmat[static_cast<std::size_t>(j) * cols + j]));
    }
    condition = dmax / std::max(dmin, 1e-300);
    if (condition > 1e12)
        return false;

    // M = R^{-1} Q^T maps values to coefficients
    std::vector<double> m(static_cast<std::size_t>(cols) * rows, 0.0);
    for (int s = 0; s < rows; ++s) {
        for (int i = cols - 1; i >= 0; --i) {
            double v = qmat[static_cast<std::size_t>(s) * cols + i];
            for (int l = i + 1; l < cols; ++l)
                v -= rmat[static_cast<std::size_t>(i) * cols + l] * m[static_cast<std::size_t>(l) * rows + s];
            m[static_cast<std::size_t>(i) * rows + s] = v / rmat[static_cast<std::size_t>(i) * cols + i];
        }
    }
    coeff.assign(static_cast<std::size_t>(cols), 0.0);
    coeff_sigma.assign(static_cast<std::size_t>(cols), 0.0);
    for (int i = 0; i < cols; ++i) {
        double c = 0.0, var = 0.0;
        for (int s = 0; s < rows; ++s) {
            const double mw = m[static_cast<std::size_t>(i) * rows + s];
            c += mw * vals[static_cast<std::size_t>(s)]; // vals carry the weights
            const double se = mw * weight[static_cast<std::size_t>(s)] * sigmas[static_cast<std::size_t>(s)];
            var += se * se;
        }
        coeff[static_cast<std::size_t>(i)] = c;
        coeff_sigma[static_cast<std::size_t>(i)] = std::sqrt(var);
    }
    return true;
}

} // namespace

VkEstimate steiner_vk_nd(const NdBallBody& body, int k, std::span<const double> t_grid,
                         long long n_samples, uint64_t seed) {
    const int d = body.dim();
    if (k < 1 || k > d)
        throw std::domain_error("steiner_vk_nd: k out of range");
    if (!body.nonempty())
        throw std::domain_error("steiner_vk_nd: empty body");
    std::vector<double> ts(t_grid.begin(), t_grid.end());
    std::sort(ts.begin(), ts.end());
    if (static_cast<int>(ts.size()) < d + 1)
        throw std::domain_error("steiner_vk_nd: need at least d+1 grid points");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(ts[i] > 0.0))
            throw std::domain_error("steiner_vk_nd: grid entries must be positive");
        if (i > 0 && !(ts[i] > ts[i - 1] + 1e-12))
            throw std::domain_error("steiner_vk_nd: grid entries must be distinct");
    }

    std::vector<double> vals(ts.size()), sigmas(ts.size());
    std::vector<double> p(static_cast<std::size_t>(d));
    const double r = body.radius();
    for (std::size_t ti = 0; ti < ts.size(); ++ti) {
        const double t = ts[ti];
        double boxvol = 1.0;
        std::vector<double> lo(body.box_lo().begin(), body.box_lo().end());
        std::vector<double> hi(body.box_hi().begin(), body.box_hi().end());
        for (int c = 0; c < d; ++c) {
            lo[static_cast<std::size_t>(c)] -= t;
            hi[static_cast<std::size_t>(c)] += t;
            boxvol *= hi[static_cast<std::size_t>(c)] - lo[static_cast<std::size_t>(c)];
        }
        const long long chunk = 65536;
        long long hits = 0;
        for (long long start = 0, ci = 0; start < n_samples; start += chunk, ++ci) {
            Rng rng(mix_seed(mix_seed(seed, ti), static_cast<uint64_t>(ci)));
            const long long m = std::min(chunk, n_samples - start);
            for (long long s = 0; s < m; ++s) {
                for (int c = 0; c < d; ++c)
                    p[static_cast<std::size_t>(c)] =
                        rng.uniform(lo[static_cast<std::size_t>(c)], hi[static_cast<std::size_t>(c)]);
                if (body.contains(p, 0.0)) {
                    ++hits;
                    continue;
                }
                // quick reject: beyond r + t of any generator means outside the dilate
                bool reject = false;
                for (std::size_t g = 0; g < body.generators().size() && !reject; ++g) {
                    auto x = body.generators().point(g);
                    double d2 = 0.0;
                    for (int c = 0; c < d; ++c) {
                        const double dd = p[static_cast<std::size_t>(c)] - x[static_cast<std::size_t>(c)];
                        d2 += dd * dd;
                    }
                    reject = d2 > (r + t) * (r + t);
                }
                if (reject)
                    continue;
                if (distance_to_body(body, p) <= t)
                    ++hits;
            }
        }
        const double phat = static_cast<double>(hits) / static_cast<double>(n_samples);
        vals[ti] = boxvol * phat;
        sigmas[ti] = boxvol * std::sqrt(std::max(0.0, phat * (1.0 - phat) / n_samples));
    }

    std::vector<double> coeff, coeff_sigma;
    double condition = 0.0;
    if (!polyfit(ts, vals, sigmas, d, coeff, coeff_sigma, condition))
        throw ConvergenceError(
            "steiner_vk_nd: Steiner fit is ill-conditioned; widen or rescale the t grid");

    VkEstimate est;
    est.k = k;
    est.method = VkEstimate::Method::steiner_fit;
    est.samples = n_samples * static_cast<long long>(ts.size());
    est.seed = seed;
    est.value = coeff[static_cast<std::size_t>(d - k)] / omega(d - k);
    est.std_error = coeff_sigma[static_cast<std::size_t>(d - k)] / omega(d - k);
    return est;
}

MatchingBall matching_ball(double body_volume, int d, double r, const Tolerances& tol) {
    if (!(body_volume > 0.0))
        throw std::domain_error("matching_ball: volume must be positive");
    if (d < 2 || d > 8)
        throw std::domain_error("matching_ball: dimension must be in [2, 8]");
    if (!(r > 0.0))
        throw std::domain_error("matching_ball: radius must be positive");
    MatchingBall mb;
    mb.rho = std::pow(body_volume / omega(d), 1.0 / d);
    if (mb.rho > r + tol.geom) {
        mb.dual = MatchingBall::DualKind::Empty;
        mb.dual_radius = 0.0;
    } else if (mb.rho >= r - tol.geom) {
        mb.dual = MatchingBall::DualKind::Point;
        mb.dual_radius = 0.0;
    } else {
        mb.dual = MatchingBall::DualKind::Ball;
        mb.dual_radius = r - mb.rho;
    }
    return mb;
}

std::vector<double> boundary_sample_nd(const NdBallBody& body, int m) {
    if (!body.nonempty())
        throw std::domain_error("boundary_sample_nd: empty body");
    const int d = body.dim();
    const auto c = body.feasible_point();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(d));
    const auto dirs = sphere_directions(d, m);
    const double r = body.radius();
    for (const auto& v : dirs) {
        // exact ray cast: smallest positive root over the generator balls
        double t = 1e300;
        for (std::size_t g = 0; g < body.generators().size(); ++g) {
            auto x = body.generators().point(g);
            double b = 0.0, cc = -r * r;
            for (int i = 0; i < d; ++i) {
                const double diff = c[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)];
                b += diff * v[static_cast<std::size_t>(i)];
                cc += diff * diff;
            }
            const double disc = b * b - cc;
            if (disc < 0.0)
                continue;
            t = std::min(t, -b + std::sqrt(disc));
        }
        t = std::max(t, 0.0);
        for (int i = 0; i < d; ++i)
            out.push_back(c[static_cast<std::size_t>(i)] + t * v[static_cast<std::size_t>(i)]);
    }
    return out;
}

} // namespace rball
