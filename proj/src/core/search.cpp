#include "core/search.hpp"

#include <algorithm>
#include <cmath>

#include "core/ball2d.hpp"
#include "core/hull3d.hpp"
#include "core/ndbody.hpp"
#include "core/rng.hpp"
#include "core/shape_metrics.hpp"

namespace rball {

void SearchConfig::validate() const {
    tol.validate();
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("search: dim must be 2 or 3");
    if (!(r > 0.0))
        throw std::invalid_argument("search: r must be positive");
    if (k < 1 || k > dim)
        throw std::invalid_argument("search: k must lie in [1, dim]");
    const double vmax = omega(dim) * std::pow(r, dim);
    if (!(target_volume > 0.0 && target_volume < vmax))
        throw std::invalid_argument("search: target volume must lie in (0, omega_d r^d)");
    if (n_generators < 2)
        throw std::invalid_argument("search: need at least two generators");
    if (restarts < 1 || max_evals < 10)
        throw std::invalid_argument("search: bad budget");
    if (penalty_schedule.empty())
        throw std::invalid_argument("search: penalty schedule must be nonempty");
}

int coordinate_count(const SearchConfig& c) {
    return (c.n_generators - 1) * c.dim - (c.dim - 1);
}

std::vector<std::vector<double>> decode_generators(const SearchConfig& c,
                                                   std::span<const double> coords) {
    if (static_cast<int>(coords.size()) != coordinate_count(c))
        throw std::invalid_argument("decode_generators: coordinate count mismatch");
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(c.n_generators));
    pts.push_back(std::vector<double>(static_cast<std::size_t>(c.dim), 0.0));
    std::size_t at = 0;
    {
        std::vector<double> second(static_cast<std::size_t>(c.dim), 0.0);
        second[0] = coords[at++];
        pts.push_back(std::move(second));
    }
    for (int g = 2; g < c.n_generators; ++g) {
        std::vector<double> p(static_cast<std::size_t>(c.dim));
        for (int i = 0; i < c.dim; ++i)
            p[static_cast<std::size_t>(i)] = coords[at++];
        pts.push_back(std::move(p));
    }
    return pts;
}

namespace {

struct Evaluated {
    double vk_dual = 0.0;     // V_k(A^r)
    double volume = 0.0;      // V_d(A)
    bool empty_hull = false;
};

Evaluated evaluate(const SearchConfig& c, std::span<const double> coords) {
    Evaluated out;
    auto pts = decode_generators(c, coords);
    PointSet gens(c.dim, c.r, std::move(pts), c.tol);
    if (c.dim == 2) {
        const BallBody hull = ball_hull_2d(gens, c.tol);
        if (hull.is_empty()) {
            out.empty_hull = true;
            return out;
        }
        if (hull.is_point()) {
            out.vk_dual = ball_intrinsic_volume(2, c.k, c.r);
            out.volume = 0.0;
            return out;
        }
        out.volume = hull.region().area();
        out.vk_dual =
            c.k == 1 ? intrinsic_volumes_2d(dual_2d(hull.region(), c.tol)).v1
                     : intrinsic_volumes_2d(dual_2d(hull.region(), c.tol)).v2;
        return out;
    }

    const HullBody3 hull(gens, c.tol);
    if (hull.kind() == HullBody3::Kind::Empty) {
        out.empty_hull = true;
        return out;
    }
    if (hull.kind() == HullBody3::Kind::Point) {
        out.vk_dual = ball_intrinsic_volume(3, c.k, c.r);
        out.volume = 0.0;
        return out;
    }
    // per-evaluation seeds from the coordinate hash keep the objective pure
    const uint64_t eval_seed = hash_doubles(coords, 0x3dba11);
    const VkEstimate vd = hull.volume_mc(c.mc_samples, eval_seed);
    out.volume = vd.value;
    if (hull.kind() == HullBody3::Kind::FullBall) {
        out.vk_dual = 0.0; // the dual of the full ball is a single point
        return out;
    }
    const NdBallBody dual_body(gens, c.tol); // A^r = X^r
    if (c.k == 3)
        out.vk_dual = estimate_vd_nd(dual_body, c.mc_samples, mix_seed(eval_seed, 1)).value;
    else if (c.k == 1)
        out.vk_dual = estimate_v1_nd(dual_body, c.mc_directions, c.support_tol).value;
    else
        out.vk_dual = steiner_vk_nd(dual_body, c.k,
                                    std::vector<double>{0.2, 0.45, 0.7, 0.95, 1.2, 1.5, 1.8},
                                    c.mc_samples, mix_seed(eval_seed, 2))
                          .value;
    return out;
}

double objective_from(const SearchConfig& c, const Evaluated& e, double penalty) {
    if (e.empty_hull) {
        const double sentinel = 2.0 * ball_intrinsic_volume(c.dim, c.k, c.r);
        return sentinel + penalty * c.target_volume * c.target_volume;
    }
    const double residual = e.volume - c.target_volume;
    return e.vk_dual + penalty * residual * residual;
}

struct NelderMead {
    const SearchConfig& c;
    double penalty;
    long long evals = 0;
    long long max_evals;
    double penalty_max;
    // trace of the final-penalty metric, cumulative minimum
    std::vector<double>* trace;
    double trace_best = 1e300;

    double eval(std::span<const double> x) {
        ++evals;
        const Evaluated e = evaluate(c, x);
        if (trace) {
            const double final_metric = objective_from(c, e, penalty_max);
            trace_best = std::min(trace_best, final_metric);
            trace->push_back(trace_best);
        }
        return objective_from(c, e, penalty);
    }

    std::vector<double> run(std::vector<double> x0, double scale) {
        const int n = static_cast<int>(x0.size());
        std::vector<std::vector<double>> simplex;
        std::vector<double> fx;
        simplex.push_back(x0);
        fx.push_back(eval(x0));
        for (int i = 0; i < n; ++i) {
            auto v = x0;
            v[static_cast<std::size_t>(i)] += scale;
            simplex.push_back(v);
            fx.push_back(eval(v));
        }
        auto order = [&] {
            std::vector<std::size_t> idx(simplex.size());
            for (std::size_t i = 0; i < idx.size(); ++i)
                idx[i] = i;
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
            std::vector<std::vector<double>> s2;
            std::vector<double> f2;
            for (auto i : idx) {
                s2.push_back(std::move(simplex[i]));
                f2.push_back(fx[i]);
            }
            simplex = std::move(s2);
            fx = std::move(f2);
        };
        order();
        while (evals < max_evals) {
            if (fx.back() - fx.front() < c.converge_spread)
                break;
            std::vector<double> centroid(static_cast<std::size_t>(n), 0.0);
            for (std::size_t i = 0; i + 1 < simplex.size(); ++i)
                for (int j = 0; j < n; ++j)
                    centroid[static_cast<std::size_t>(j)] +=
                        simplex[i][static_cast<std::size_t>(j)] / static_cast<double>(n);
            auto blend = [&](double t) {
                std::vector<double> x(static_cast<std::size_t>(n));
                for (int j = 0; j < n; ++j)
                    x[static_cast<std::size_t>(j)] =
                        centroid[static_cast<std::size_t>(j)] +
                        t * (simplex.back()[static_cast<std::size_t>(j)] -
                             centroid[static_cast<std::size_t>(j)]);
                return x;
            };
            const auto reflected = blend(-1.0);
            const double fr = eval(reflected);
            if (fr < fx.front()) {
                const auto expanded = blend(-2.0);
                const double fe = eval(expanded);
                if (fe < fr) {
                    simplex.back() = expanded;
                    fx.back() = fe;
                } else {
                    simplex.back() = reflected;
                    fx.back() = fr;
                }
            } else if (fr < fx[fx.size() - 2]) {
                simplex.back() = reflected;
                fx.back() = fr;
            } else {
                const auto contracted = blend(fr < fx.back() ? -0.5 : 0.5);
                const double fc = eval(contracted);
                if (fc < std::min(fr, fx.back())) {
                    simplex.back() = contracted;
                    fx.back() = fc;
                } else {
                    for (std::size_t i = 1; i < simplex.size(); ++i) {
                        for (int j = 0; j < n; ++j)
                            simplex[i][static_cast<std::size_t>(j)] =
                                0.5 * (simplex[i][static_cast<std::size_t>(j)] +
                                       simplex[0][static_cast<std::size_t>(j)]);
                        fx[i] = eval(simplex[i]);
                    }
                }
            }
            order();
        }
        return simplex.front();
    }
};

// exact volume projection: homothety of the generators about their centroid
std::optional<std::vector<double>> project_volume(const SearchConfig& c,
                                                  std::span<const double> coords) {
    auto volume_at = [&](const std::vector<double>& x) -> std::optional<double> {
        const Evaluated e = evaluate(c, x);
        if (e.empty_hull)
            return std::nullopt;
        return e.volume;
    };
    auto scaled = [&](double s) {
        // the pinned parametrization is linear in the generator coordinates,
        // so the homothety about the first generator is a plain scaling
        std::vector<double> x(coords.begin(), coords.end());
        for (auto& v : x)
            v *= s;
        return x;
    };
    double lo = 1.0, hi = 1.0;
    auto v0 = volume_at(scaled(1.0));
    if (!v0)
        return std::nullopt;
    if (*v0 < c.target_volume) {
        // grow toward the empty-hull cliff with back-off; the hull area tends
        // to the full-disk value there, so the target is reachable
        double step = 0.25, cur = *v0;
        for (int i = 0; i < 400 && cur < c.target_volume; ++i) {
            const double cand = hi * (1.0 + step);
            const auto v = volume_at(scaled(cand));
            if (!v) {
                step *= 0.5;
                if (step < 1e-9)
                    break;
                continue;
            }
            hi = cand;
            cur = *v;
        }
        if (cur < c.target_volume)
            return std::nullopt;
    } else {
        for (int i = 0; i < 200 && *v0 > c.target_volume; ++i) {
            lo *= 0.5;
            v0 = volume_at(scaled(lo));
            if (!v0)
                return std::nullopt;
        }
        if (*v0 > c.target_volume)
            return std::nullopt;
        hi = lo * 2.0;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        auto v = volume_at(scaled(mid));
        if (!v || *v > c.target_volume)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-15)
            break;
    }
    auto out = scaled(0.5 * (lo + hi));
    if (auto v = volume_at(out);
        v && std::fabs(*v - c.target_volume) <= 1e-6 * c.target_volume)
        return out;
    return std::nullopt;
}

} // namespace

double search_objective(const SearchConfig& config, std::span<const double> coords,
                        double penalty) {
    config.validate();
    return objective_from(config, evaluate(config, coords), penalty);
}

double lens_baseline(double r, double v, int k) {
    if (k < 1 || k > 2)
        throw std::domain_error("lens_baseline: k must be 1 or 2");
    const ArcPolygon lens = make_lens(r, lens_gap_for_area(r, v));
    const Vk2D vk = intrinsic_volumes_2d(dual_2d(lens));
    return k == 1 ? vk.v1 : vk.v2;
}

SearchResult minimize(const SearchConfig& config) {
    config.validate();
    SearchResult result;
    result.dim = config.dim;
    result.r = config.r;
    result.k = config.k;
    result.seed = config.seed;
    result.exploratory = config.dim == 3;
    if (config.dim == 3)
        result.note = "the 3D minimizer is an open question; values are evidence only";

    if (config.dim == 2) {
        result.baseline = lens_baseline(config.r, config.target_volume, config.k);
    } else {
        // best-known comparison point: the two-generator spindle of the target volume
        const double t = spindle3_gap_for_volume(config.r, config.target_volume);
        const PointSet two(3, config.r,
                           {{-0.5 * t, 0.0, 0.0}, {0.5 * t, 0.0, 0.0}}, config.tol);
        const NdBallBody dual_body(two, config.tol);
        if (config.k == 3)
            result.baseline =
                estimate_vd_nd(dual_body, config.mc_samples, mix_seed(config.seed, 0xb1)).value;
        else
            result.baseline =
                estimate_v1_nd(dual_body, config.mc_directions, config.support_tol).value;
    }

    double best_obj = 1e300;
    std::vector<double> best_coords;
    const int ncoord = coordinate_count(config);

    for (int restart = 0; restart < config.restarts; ++restart) {
        Rng rng(mix_seed(config.seed, static_cast<uint64_t>(restart)));
        std::vector<double> x(static_cast<std::size_t>(ncoord));
        for (auto& v : x)
            v = rng.uniform(-config.init_scale * config.r, config.init_scale * config.r);

        result.trace.emplace_back();
        NelderMead nm{config,
                      config.penalty_schedule.front(),
                      0,
                      config.max_evals,
                      config.penalty_schedule.back(),
                      &result.trace.back(),
                      1e300};
        double scale = config.simplex_scale * config.r;
        for (double penalty : config.penalty_schedule) {
            nm.penalty = penalty;
            x = nm.run(std::move(x), scale);
            scale = std::max(0.25 * scale, 1e-4 * config.r);
            if (nm.evals >= config.max_evals)
                break;
        }

        // exact projection onto the volume constraint, then a short polish on
        // the projected objective
        auto projected = project_volume(config, x);
        if (!projected)
            continue;
        auto project_and_score = [&](std::span<const double> y) -> double {
            auto p = project_volume(config, y);
            if (!p)
                return 1e300;
            const Evaluated e = evaluate(config, *p);
            return e.vk_dual;
        };
        if (config.polish_evals > 0 && config.dim == 2) {
            // small simplex descent on the projected objective
            std::vector<std::vector<double>> simplex{*projected};
            std::vector<double> fx{project_and_score(*projected)};
            for (int i = 0; i < ncoord; ++i) {
                auto v = *projected;
                v[static_cast<std::size_t>(i)] += 2e-3 * config.r;
                simplex.push_back(v);
                fx.push_back(project_and_score(v));
            }
            long long used = 0;
            while (used < config.polish_evals) {
                std::size_t worst = 0, best = 0, second = 0;
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    if (fx[i] > fx[worst])
                        worst = i;
                    if (fx[i] < fx[best])
                        best = i;
                }
                second = best;
                for (std::size_t i = 0; i < simplex.size(); ++i)
                    if (i != worst && fx[i] > fx[second])
                        second = i;
                if (fx[worst] - fx[best] < config.converge_spread)
                    break;
                std::vector<double> centroid(static_cast<std::size_t>(ncoord), 0.0);
                for (std::size_t i = 0; i < simplex.size(); ++i)
                    if (i != worst)
                        for (int j = 0; j < ncoord; ++j)
                            centroid[static_cast<std::size_t>(j)] +=
                                simplex[i][static_cast<std::size_t>(j)] /
                                static_cast<double>(ncoord);
                auto make = [&](double t) {
                    std::vector<double> y(static_cast<std::size_t>(ncoord));
                    for (int j = 0; j < ncoord; ++j)
                        y[static_cast<std::size_t>(j)] =
                            centroid[static_cast<std::size_t>(j)] +
                            t * (simplex[worst][static_cast<std::size_t>(j)] -
                                 centroid[static_cast<std::size_t>(j)]);
                    return y;
                };
                const auto refl = make(-1.0);
                const double fr = project_and_score(refl);
                ++used;
                if (fr < fx[best]) {
                    const auto exp2 = make(-2.0);
                    const double fe = project_and_score(exp2);
                    ++used;
                    if (fe < fr) {
                        simplex[worst] = exp2;
                        fx[worst] = fe;
                    } else {
                        simplex[worst] = refl;
                        fx[worst] = fr;
                    }
                } else if (fr < fx[second]) {
                    simplex[worst] = refl;
                    fx[worst] = fr;
                } else {
                    const auto con = make(0.5);
                    const double fc = project_and_score(con);
                    ++used;
                    if (fc < fx[worst]) {
                        simplex[worst] = con;
                        fx[worst] = fc;
                    } else {
                        for (std::size_t i = 0; i < simplex.size(); ++i) {
                            if (i == best)
                                continue;
                            for (int j = 0; j < ncoord; ++j)
                                simplex[i][static_cast<std::size_t>(j)] =
                                    0.5 * (simplex[i][static_cast<std::size_t>(j)] +
                                           simplex[best][static_cast<std::size_t>(j)]);
                            fx[i] = project_and_score(simplex[i]);
                            ++used;
                        }
                    }
                }
            }
            std::size_t best = 0;
            for (std::size_t i = 1; i < simplex.size(); ++i)
                if (fx[i] < fx[best])
                    best = i;
            projected = project_volume(config, simplex[best]);
            if (!projected)
                continue;
        }

        const Evaluated e = evaluate(config, *projected);
        if (e.empty_hull)
            continue;
        if (e.vk_dual < best_obj) {
            best_obj = e.vk_dual;
            best_coords = *projected;
        }
    }

    if (best_coords.empty()) {
        result.feasible = false;
        result.note = "all restarts failed the volume projection";
        return result;
    }
    result.feasible = true;
    const Evaluated e = evaluate(config, best_coords);
    result.best_objective = e.vk_dual;
    result.constraint_residual = std::fabs(e.volume - config.target_volume);
    result.gap = result.best_objective - result.baseline;
    auto pts = decode_generators(config, best_coords);
    for (const auto& p : pts)
        result.best_generators.insert(result.best_generators.end(), p.begin(), p.end());
    if (config.dim == 2) {
        PointSet gens(2, config.r, std::move(pts), config.tol);
        const BallBody hull = ball_hull_2d(gens, config.tol);
        if (hull.is_region())
            result.normalized_shape = normalize_pose(hull.region(), config.tol);
    }
    return result;
}

} // namespace rball
