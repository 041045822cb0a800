#include "rball.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "core/ball2d.hpp"
#include "core/json_io.hpp"
#include "core/ndbody.hpp"
#include "core/search.hpp"
#include "core/shape_metrics.hpp"
#include "core/verify.hpp"

namespace {

thread_local std::string g_last_error;

rb_status fail(rb_status st, const char* what) {
    g_last_error = what;
    return st;
}

template <class F> rb_status guarded(F&& f) {
    try {
        f();
        return RB_OK;
    } catch (const rball::ParseError& e) {
        return fail(RB_ERR_PARSE, e.what());
    } catch (const rball::ConvergenceError& e) {
        return fail(RB_ERR_CONVERGENCE, e.what());
    } catch (const std::domain_error& e) {
        return fail(RB_ERR_DOMAIN, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(RB_ERR_DOMAIN, e.what());
    } catch (const std::exception& e) {
        return fail(RB_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(RB_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = new (std::nothrow) char[s.size() + 1];
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

struct rb_pointset {
    rball::PointSet value;
};

struct rb_body2d {
    rball::BallBody value;
    double radius;
};

struct rb_ndbody {
    rball::NdBallBody value;
};

extern "C" {

const char* rb_last_error(void) { return g_last_error.c_str(); }

void rb_string_free(char* s) { delete[] s; }

rb_status rb_pointset_create(int dim, double r, const double* coords, size_t n_points,
                             rb_pointset** out) {
    if (!coords || !out || n_points == 0)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        std::vector<std::vector<double>> pts(n_points);
        for (size_t i = 0; i < n_points; ++i)
            pts[i].assign(coords + i * static_cast<size_t>(dim),
                          coords + (i + 1) * static_cast<size_t>(dim));
        *out = new rb_pointset{rball::PointSet(dim, r, std::move(pts))};
    });
}

rb_status rb_pointset_from_json(const char* text, rb_pointset** out) {
    if (!text || !out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] { *out = new rb_pointset{rball::pointset_from_json(text)}; });
}

char* rb_pointset_to_json(const rb_pointset* ps) {
    if (!ps)
        return nullptr;
    return dup_string(rball::pointset_to_json(ps->value));
}

void rb_pointset_free(rb_pointset* ps) { delete ps; }

int rb_pointset_dim(const rb_pointset* ps) { return ps ? ps->value.dim() : 0; }

double rb_pointset_radius(const rb_pointset* ps) { return ps ? ps->value.radius() : 0.0; }

size_t rb_pointset_size(const rb_pointset* ps) { return ps ? ps->value.size() : 0; }

rb_status rb_body2d_compute(const rb_pointset* ps, rb_body2d** out) {
    if (!ps || !out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        *out = new rb_body2d{rball::ball_body_2d(ps->value), ps->value.radius()};
    });
}

rb_status rb_hull2d_compute(const rb_pointset* ps, rb_body2d** out) {
    if (!ps || !out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        *out = new rb_body2d{rball::ball_hull_2d(ps->value), ps->value.radius()};
    });
}

rb_status rb_body2d_dual(const rb_body2d* body, rb_body2d** out) {
    if (!body || !out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        if (!body->value.is_region())
            throw std::domain_error("dual of a non-region body");
        *out = new rb_body2d{rball::dual_2d(body->value.region()), body->radius};
    });
}

void rb_body2d_free(rb_body2d* body) { delete body; }

rb_body_kind rb_body2d_kind(const rb_body2d* body) {
    if (!body || body->value.is_empty())
        return RB_BODY_EMPTY;
    return body->value.is_point() ? RB_BODY_POINT : RB_BODY_REGION;
}

double rb_body2d_radius(const rb_body2d* body) { return body ? body->radius : 0.0; }

int rb_body2d_full_disk(const rb_body2d* body) {
    return body && body->value.is_region() && body->value.region().full_disk() ? 1 : 0;
}

rb_status rb_body2d_point(const rb_body2d* body, double* x, double* y) {
    if (!body || !x || !y)
        return fail(RB_ERR_DOMAIN, "null input");
    if (!body->value.is_point())
        return fail(RB_ERR_DOMAIN, "body is not a single point");
    *x = body->value.point().x;
    *y = body->value.point().y;
    return RB_OK;
}

size_t rb_body2d_arc_count(const rb_body2d* body) {
    return body && body->value.is_region() ? body->value.region().arcs().size() : 0;
}

rb_status rb_body2d_arc(const rb_body2d* body, size_t index, double* cx, double* cy,
                        double* start_angle, double* end_angle) {
    if (!body || !cx || !cy || !start_angle || !end_angle)
        return fail(RB_ERR_DOMAIN, "null input");
    if (!body->value.is_region() || index >= body->value.region().arcs().size())
        return fail(RB_ERR_DOMAIN, "arc index out of range");
    const rball::Arc& a = body->value.region().arcs()[index];
    *cx = a.center.x;
    *cy = a.center.y;
    *start_angle = a.start_angle;
    *end_angle = a.end_angle;
    return RB_OK;
}

size_t rb_body2d_vertex_count(const rb_body2d* body) {
    return body && body->value.is_region() ? body->value.region().vertices().size() : 0;
}

rb_status rb_body2d_vertex(const rb_body2d* body, size_t index, double* x, double* y) {
    if (!body || !x || !y)
        return fail(RB_ERR_DOMAIN, "null input");
    if (!body->value.is_region() || index >= body->value.region().vertices().size())
        return fail(RB_ERR_DOMAIN, "vertex index out of range");
    *x = body->value.region().vertices()[index].x;
    *y = body->value.region().vertices()[index].y;
    return RB_OK;
}

rb_status rb_body2d_intrinsic_volumes(const rb_body2d* body, double* v1, double* v2) {
    if (!body || !v1 || !v2)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        const rball::Vk2D vk = rball::intrinsic_volumes_2d(body->value);
        *v1 = vk.v1;
        *v2 = vk.v2;
    });
}

rb_status rb_body2d_support(const rb_body2d* body, double ux, double uy, double* h) {
    if (!body || !h)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        if (!body->value.is_region())
            throw std::domain_error("support of a non-region body");
        *h = rball::support_2d(body->value.region(), {ux, uy});
    });
}

int rb_body2d_contains(const rb_body2d* body, double x, double y) {
    return body && rball::contains_2d(body->value, {x, y}) ? 1 : 0;
}

rb_status rb_body2d_hausdorff(const rb_body2d* a, const rb_body2d* b, double* dist) {
    if (!a || !b || !dist)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] { *dist = rball::hausdorff_distance(a->value, b->value); });
}

rb_status rb_body2d_normalize_pose(const rb_body2d* body, rb_body2d** out) {
    if (!body || !out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        if (!body->value.is_region())
            throw std::domain_error("pose normalization needs a region");
        *out = new rb_body2d{rball::BallBody(rball::normalize_pose(body->value.region())),
                             body->radius};
    });
}

rb_status rb_body2d_congruent(const rb_body2d* a, const rb_body2d* b, double tol,
                              int* congruent) {
    if (!a || !b || !congruent)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] { *congruent = rball::is_congruent(a->value, b->value, tol) ? 1 : 0; });
}

char* rb_body2d_to_json(const rb_body2d* body) {
    if (!body)
        return nullptr;
    return dup_string(rball::body_to_json(body->value, body->radius));
}

rb_status rb_body2d_from_json(const char* text, rb_body2d** out) {
    if (!text || !out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        double radius = 0.0;
        rball::BallBody body = rball::body_from_json(text, &radius);
        *out = new rb_body2d{std::move(body), radius};
    });
}

rb_status rb_make_lens(double r, double gap, rb_body2d** out) {
    if (!out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] { *out = new rb_body2d{rball::BallBody(rball::make_lens(r, gap)), r}; });
}

rb_status rb_lens_gap_for_area(double r, double area, double* gap) {
    if (!gap)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] { *gap = rball::lens_gap_for_area(r, area); });
}

rb_status rb_omega(int dim, double* out) {
    if (!out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        if (dim < 1)
            throw std::domain_error("omega needs a positive dimension");
        *out = rball::omega(dim);
    });
}

rb_status rb_ball_intrinsic_volume(int dim, int k, double radius, double* out) {
    if (!out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] { *out = rball::ball_intrinsic_volume(dim, k, radius); });
}

rb_status rb_ndbody_create(const rb_pointset* ps, rb_ndbody** out) {
    if (!ps || !out)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] { *out = new rb_ndbody{rball::NdBallBody(ps->value)}; });
}

void rb_ndbody_free(rb_ndbody* body) { delete body; }

int rb_ndbody_nonempty(const rb_ndbody* body) {
    return body && body->value.nonempty() ? 1 : 0;
}

int rb_ndbody_contains(const rb_ndbody* body, const double* point, int dim) {
    if (!body || !point || dim != body->value.dim())
        return 0;
    return body->value.contains({point, static_cast<size_t>(dim)}, 1e-9) ? 1 : 0;
}

rb_status rb_ndbody_support(const rb_ndbody* body, const double* dir, int dim, double tol,
                            double* h) {
    if (!body || !dir || !h)
        return fail(RB_ERR_DOMAIN, "null input");
    if (dim != body->value.dim())
        return fail(RB_ERR_DOMAIN, "direction dimension mismatch");
    return guarded([&] {
        *h = rball::support_nd(body->value, {dir, static_cast<size_t>(dim)}, tol);
    });
}

rb_status rb_ndbody_volume(const rb_ndbody* body, long long samples, uint64_t seed,
                           double* value, double* std_error) {
    if (!body || !value || !std_error)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        const rball::VkEstimate est = rball::estimate_vd_nd(body->value, samples, seed);
        *value = est.value;
        *std_error = est.std_error;
    });
}

rb_status rb_ndbody_v1(const rb_ndbody* body, int directions, double tol, double* value,
                       double* std_error) {
    if (!body || !value || !std_error)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        const rball::VkEstimate est = rball::estimate_v1_nd(body->value, directions, tol);
        *value = est.value;
        *std_error = est.std_error;
    });
}

rb_status rb_ndbody_steiner_vk(const rb_ndbody* body, int k, const double* t_grid,
                               int grid_len, long long samples, uint64_t seed,
                               double* value, double* std_error) {
    if (!body || !t_grid || !value || !std_error || grid_len <= 0)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        const rball::VkEstimate est = rball::steiner_vk_nd(
            body->value, k, {t_grid, static_cast<size_t>(grid_len)}, samples, seed);
        *value = est.value;
        *std_error = est.std_error;
    });
}

rb_status rb_matching_ball(double volume, int dim, double r, double* rho,
                           rb_dual_kind* dual_kind, double* dual_radius) {
    if (!rho || !dual_kind || !dual_radius)
        return fail(RB_ERR_DOMAIN, "null input");
    return guarded([&] {
        const rball::MatchingBall mb = rball::matching_ball(volume, dim, r);
        *rho = mb.rho;
        *dual_radius = mb.dual_radius;
        switch (mb.dual) {
        case rball::MatchingBall::DualKind::Ball: *dual_kind = RB_DUAL_BALL; break;
        case rball::MatchingBall::DualKind::Point: *dual_kind = RB_DUAL_POINT; break;
        case rball::MatchingBall::DualKind::Empty: *dual_kind = RB_DUAL_EMPTY; break;
        }
    });
}

char* rb_verify_run(const char* suite, const char* config_json, rb_status* status) {
    rb_status local = RB_OK;
    char* out = nullptr;
    local = guarded([&] {
        if (!suite)
            throw std::domain_error("null suite name");
        const nlohmann::json j =
            config_json ? nlohmann::json::parse(config_json, nullptr, false)
                        : nlohmann::json::object();
        if (j.is_discarded())
            throw rball::ParseError("malformed verify configuration");
        rball::TrialSpec spec;
        spec.dim = j.value("dim", 2);
        spec.r = j.value("r", 1.0);
        spec.trials = j.value("trials", static_cast<long long>(1000));
        spec.seed = j.value("seed", static_cast<uint64_t>(0));
        spec.min_generators = j.value("min_generators", 2);
        spec.max_generators = j.value("max_generators", 8);
        spec.law = rball::generator_law_from_string(j.value("law", std::string("uniform_disk")));
        spec.law_scale = j.value("law_scale", 0.6);
        spec.probes = j.value("probes", 1000);
        spec.target_area = j.value("target_area", -1.0);
        spec.mc_samples = j.value("mc_samples", static_cast<long long>(200000));
        spec.mc_directions = j.value("mc_directions", 400);
        const int k = j.value("k", 1);

        rball::CheckReport rep;
        const std::string name(suite);
        if (name == "bs")
            rep = rball::check_blaschke_santalo(spec, k);
        else if (name == "product")
            rep = rball::check_product(spec, k);
        else if (name == "support")
            rep = rball::check_support_identity(spec);
        else if (name == "identities")
            rep = rball::check_identities(spec);
        else if (name == "mahler2d")
            rep = rball::check_mahler_2d(spec, k);
        else
            throw std::domain_error("unknown suite: " + name);
        out = dup_string(rball::report_to_json(rep));
    });
    if (status)
        *status = local;
    return out;
}

char* rb_search_run(const char* config_json, rb_status* status) {
    rb_status local = RB_OK;
    char* out = nullptr;
    local = guarded([&] {
        if (!config_json)
            throw std::domain_error("null search configuration");
        const nlohmann::json j = nlohmann::json::parse(config_json, nullptr, false);
        if (j.is_discarded())
            throw rball::ParseError("malformed search configuration");
        rball::SearchConfig c;
        c.dim = j.value("dim", 2);
        c.r = j.value("r", 1.0);
        c.k = j.value("k", 1);
        c.target_volume = j.value("v", j.value("target_volume", 1.0));
        c.n_generators = j.value("n", j.value("n_generators", 2));
        c.restarts = j.value("restarts", 20);
        c.max_evals = j.value("max_evals", static_cast<long long>(20000));
        c.seed = j.value("seed", static_cast<uint64_t>(0));
        c.mc_samples = j.value("mc_samples", static_cast<long long>(20000));
        c.mc_directions = j.value("mc_directions", 96);
        c.validate();
        out = dup_string(rball::search_result_to_json(rball::minimize(c)));
    });
    if (status)
        *status = local;
    return out;
}

} // extern "C"
