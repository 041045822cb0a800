#include "core/verify.hpp"

#include <algorithm>
#include <cmath>

#include "core/hull3d.hpp"
#include "core/ndbody.hpp"
#include "core/rng.hpp"
#include "core/shape_metrics.hpp"

namespace rball {

const char* to_string(GeneratorLaw law) {
    switch (law) {
    case GeneratorLaw::UniformDisk: return "uniform_disk";
    case GeneratorLaw::Gaussian: return "gaussian";
    case GeneratorLaw::Clustered: return "clustered";
    }
    return "unknown";
}

GeneratorLaw generator_law_from_string(const std::string& s) {
    if (s == "uniform_disk")
        return GeneratorLaw::UniformDisk;
    if (s == "gaussian")
        return GeneratorLaw::Gaussian;
    if (s == "clustered")
        return GeneratorLaw::Clustered;
    throw std::invalid_argument("unknown generator law: " + s);
}

void TrialSpec::validate() const {
    tol.validate();
    if (dim < 2 || dim > 8)
        throw std::invalid_argument("trial spec: dim must be in [2, 8]");
    if (!(r > 0.0))
        throw std::invalid_argument("trial spec: r must be positive");
    if (min_generators < 1 || max_generators < min_generators)
        throw std::invalid_argument("trial spec: bad generator range");
    if (trials < 1)
        throw std::invalid_argument("trial spec: need at least one trial");
    if (!(law_scale > 0.0))
        throw std::invalid_argument("trial spec: law scale must be positive");
}

void CheckReport::absorb(TrialRecord rec, double tol_geom) {
    rec.index = trials_run;
    ++trials_run;
    if (rec.violation)
        ++violations;
    if (rec.near_equality) {
        ++equality_cases;
        if (rec.congruence_dist > 10.0 * tol_geom)
            ++equality_failures;
    }
    worst_margin = std::min(worst_margin, rec.slack);
    records.push_back(std::move(rec));
}

namespace {

std::vector<Vec2> draw_generators(Rng& rng, const TrialSpec& spec) {
    const int n = spec.min_generators +
                  static_cast<int>(rng.next_u64() %
                                   static_cast<uint64_t>(spec.max_generators - spec.min_generators + 1));
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n));
    switch (spec.law) {
    case GeneratorLaw::UniformDisk:
        for (int i = 0; i < n; ++i)
            pts.push_back(rng.in_unit_disk() * (spec.law_scale * spec.r));
        break;
    case GeneratorLaw::Gaussian:
        for (int i = 0; i < n; ++i)
            pts.push_back(Vec2{rng.normal(), rng.normal()} * (spec.law_scale * spec.r * 0.5));
        break;
    case GeneratorLaw::Clustered: {
        const Vec2 c1{-0.3 * spec.r, 0.0}, c2{0.3 * spec.r, 0.0};
        for (int i = 0; i < n; ++i) {
            const Vec2 base = (i % 2 == 0) ? c1 : c2;
            pts.push_back(base + rng.in_unit_disk() * (0.25 * spec.law_scale * spec.r));
        }
        break;
    }
    }
    return pts;
}

uint64_t hash_generators(const PointSet& ps) {
    return hash_doubles(ps.flat(), 0xba11b0d1ull);
}

double vk_of(const Vk2D& vk, int k) { return k == 1 ? vk.v1 : vk.v2; }

// equality band: near-equality trials must pass the congruence test
double equality_band(double scale, const Tolerances& tol) {
    return std::max(10.0 * tol.check, 1e-6 * std::fabs(scale));
}

} // namespace

SampledBody sample_rball_body_2d(const TrialSpec& spec, uint64_t trial_seed,
                                 long long* resampled) {
    Rng rng(trial_seed);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Vec2> pts = draw_generators(rng, spec);
        PointSet gens = PointSet::from_vec2(spec.r, pts, spec.tol);
        BallBody hull = ball_hull_2d(gens, spec.tol);
        if (hull.is_region() && !hull.region().full_disk())
            return {std::move(gens), std::move(hull)};
        if (resampled)
            ++(*resampled);
    }
    throw ConvergenceError("sample_rball_body_2d: could not draw a nonempty body");
}

std::optional<SampledBody> retarget_area_2d(const SampledBody& body, double v,
                                            const TrialSpec& spec) {
    const std::vector<Vec2> base = body.generators.as_vec2();
    Vec2 centroid{0.0, 0.0};
    for (Vec2 p : base)
        centroid = centroid + p;
    centroid = centroid * (1.0 / static_cast<double>(base.size()));

    auto hull_at = [&](double s) -> std::optional<SampledBody> {
        std::vector<Vec2> pts;
        pts.reserve(base.size());
        for (Vec2 p : base)
            pts.push_back(centroid + (p - centroid) * s);
        PointSet gens = PointSet::from_vec2(spec.r, pts, spec.tol);
        BallBody hull = ball_hull_2d(gens, spec.tol);
        if (!hull.is_region() || hull.region().full_disk())
            return std::nullopt;
        return SampledBody{std::move(gens), std::move(hull)};
    };
    auto area_at = [&](const SampledBody& b) { return b.hull.region().area(); };

    // bracket the homothety parameter; grow with back-off because the hull
    // area jumps toward the full-disk value right before the generators
    // escape the radius-r enclosing band
    double lo = 1.0, hi = 1.0;
    auto cur = hull_at(1.0);
    if (!cur)
        return std::nullopt;
    double a = area_at(*cur);
    if (a < v) {
        double step = 0.25;
        for (int i = 0; i < 400 && a < v; ++i) {
            const double cand = hi * (1.0 + step);
            auto nxt = hull_at(cand);
            if (!nxt) {
                step *= 0.5;
                if (step < 1e-9)
                    break;
                continue;
            }
            hi = cand;
            a = area_at(*nxt);
        }
        if (a < v)
            return std::nullopt; // area v unreachable along this family
        lo = 1.0;
    } else {
        for (int i = 0; i < 200 && a > v; ++i) {
            lo *= 0.5;
            auto nxt = hull_at(lo);
            if (!nxt)
                return std::nullopt;
            a = area_at(*nxt);
        }
        if (a > v)
            return std::nullopt;
        hi = std::min(1.0, lo * 2.0);
    }

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        auto nxt = hull_at(mid);
        if (!nxt) {
            hi = mid;
            continue;
        }
        if (area_at(*nxt) < v)
            lo = mid;
        else
            hi = mid;
    }
    auto final_body = hull_at(0.5 * (lo + hi));
    if (!final_body)
        return std::nullopt;
    if (std::fabs(area_at(*final_body) - v) > 1e-6)
        return std::nullopt;
    return final_body;
}

CheckReport check_blaschke_santalo(const TrialSpec& spec, int k) {
    spec.validate();
    if (k < 1 || k > spec.dim)
        throw std::domain_error("check_blaschke_santalo: k out of range");
    CheckReport rep;
    rep.check_name = "bs";
    rep.k = k;
    rep.dim = spec.dim;
    rep.r = spec.r;
    rep.seed = spec.seed;
    const double r = spec.r;

    if (spec.dim == 2) {
        // anchor: exact balls land on the equality case of the inequality
        for (double frac : {0.35, 0.7}) {
            const double rho = frac * r;
            TrialRecord rec;
            rec.kind = "anchor:disk";
            const double vkAr = ball_intrinsic_volume(2, k, r - rho);
            rec.slack = 0.0; // V_k(A^r) and V_k(B^r) coincide by construction
            rec.near_equality = true;
            rec.congruence_dist = 0.0;
            rec.values = {{"vk_dual", vkAr}, {"vk_ball_dual", vkAr}, {"rho", rho}};
            rep.absorb(std::move(rec), spec.tol.geom);
        }
        {
            // anchor: the unit-gap lens with its closed-form slack
            const ArcPolygon lens = make_lens(r, r, spec.tol);
            const Vk2D vkA = intrinsic_volumes_2d(BallBody(lens));
            const BallBody dual = dual_2d(lens, spec.tol);
            const double vkAr = vk_of(intrinsic_volumes_2d(dual), k);
            const MatchingBall mb = matching_ball(vkA.v2, 2, r, spec.tol);
            const double vkBr = mb.dual == MatchingBall::DualKind::Ball
                                    ? ball_intrinsic_volume(2, k, mb.dual_radius)
                                    : 0.0;
            TrialRecord rec;
            rec.kind = "anchor:lens";
            rec.slack = vkBr - vkAr;
            rec.violation = rec.slack < -spec.tol.check;
            rec.values = {{"vk_dual", vkAr}, {"vk_ball_dual", vkBr}, {"rho", mb.rho}};
            rep.absorb(std::move(rec), spec.tol.geom);
        }
        for (long long t = 0; t < spec.trials; ++t) {
            const SampledBody body =
                sample_rball_body_2d(spec, mix_seed(spec.seed, static_cast<uint64_t>(t)), &rep.resampled);
            const ArcPolygon& region = body.hull.region();
            const Vk2D vkA = intrinsic_volumes_2d(body.hull);
            const MatchingBall mb = matching_ball(vkA.v2, 2, r, spec.tol);
            const double vkBr = mb.dual == MatchingBall::DualKind::Ball
                                    ? ball_intrinsic_volume(2, k, mb.dual_radius)
                                    : 0.0;
            const BallBody dual = dual_2d(region, spec.tol);
            const double vkAr = vk_of(intrinsic_volumes_2d(dual), k);
            TrialRecord rec;
            rec.kind = "random";
            rec.input_hash = hash_generators(body.generators);
            rec.slack = vkBr - vkAr;
            rec.violation = rec.slack < -spec.tol.check;
            rec.near_equality = rec.slack <= equality_band(vkBr, spec.tol);
            if (rec.near_equality) {
                const ArcPolygon norm_a = normalize_pose(region, spec.tol);
                rec.congruence_dist = hausdorff_to_disk(BallBody(norm_a), {0.0, 0.0}, mb.rho);
            }
            rec.values = {{"vk_dual", vkAr}, {"vk_ball_dual", vkBr}, {"rho", mb.rho},
                          {"area", vkA.v2}};
            rep.absorb(std::move(rec), spec.tol.geom);
        }
        return rep;
    }

    if (spec.dim != 3)
        throw std::domain_error("check_blaschke_santalo: Monte Carlo path supports d=3 only");
    for (long long t = 0; t < spec.trials; ++t) {
        Rng rng(mix_seed(spec.seed ^ 0xd3u, static_cast<uint64_t>(t)));
        PointSet gens = [&] {
            for (int attempt = 0; attempt < 1000; ++attempt) {
                const int n = spec.min_generators +
                              static_cast<int>(rng.next_u64() %
                                               static_cast<uint64_t>(spec.max_generators -
                                                                     spec.min_generators + 1));
                std::vector<std::vector<double>> pts;
                for (int i = 0; i < n; ++i) {
                    auto p = rng.in_unit_ball(3);
                    for (auto& c : p)
                        c *= spec.law_scale * spec.r;
                    pts.push_back(std::move(p));
                }
                PointSet cand(3, spec.r, std::move(pts), spec.tol);
                const NdBallBody probe(cand, spec.tol);
                if (probe.nonempty() && !probe.is_point())
                    return cand;
                ++rep.resampled;
            }
            throw ConvergenceError("check_blaschke_santalo: generator sampling failed");
        }();

        const NdBallBody body_dual(gens, spec.tol); // X^r = A^r by the hull identity
        const HullBody3 hull(gens, spec.tol);       // A = conv_r X
        const VkEstimate vd = hull.volume_mc(spec.mc_samples, mix_seed(spec.seed, 7919 + static_cast<uint64_t>(t)));
        const MatchingBall mb = matching_ball(std::max(vd.value, 1e-12), 3, r, spec.tol);

        double vkBr = 0.0, sigma_b = 0.0;
        if (mb.dual == MatchingBall::DualKind::Ball) {
            vkBr = ball_intrinsic_volume(3, k, mb.dual_radius);
            const double sigma_rho = vd.std_error / (3.0 * omega(3) * mb.rho * mb.rho);
            sigma_b = (k * vkBr / std::max(mb.dual_radius, 1e-9)) * sigma_rho;
        }

        VkEstimate vkAr;
        if (k == 3)
            vkAr = estimate_vd_nd(body_dual, spec.mc_samples, mix_seed(spec.seed, 104729 + static_cast<uint64_t>(t)));
        else if (k == 1)
            vkAr = estimate_v1_nd(body_dual, spec.mc_directions, spec.support_tol);
        else
            throw std::domain_error("check_blaschke_santalo: d=3 path covers k in {1, 3}");

        const double combined = std::hypot(sigma_b, vkAr.std_error);
        TrialRecord rec;
        rec.kind = "random";
        rec.input_hash = hash_generators(gens);
        rec.slack = vkBr - vkAr.value;
        rec.violation = rec.slack < -3.0 * combined;
        rec.values = {{"vk_dual", vkAr.value}, {"vk_dual_se", vkAr.std_error},
                      {"vk_ball_dual", vkBr},  {"vk_ball_dual_se", sigma_b},
                      {"volume", vd.value},    {"volume_se", vd.std_error},
                      {"rho", mb.rho},         {"combined_se", combined}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    return rep;
}

CheckReport check_product(const TrialSpec& spec, int k) {
    spec.validate();
    if (spec.dim != 2)
        throw std::domain_error("check_product: exact path is 2D");
    if (k < 1 || k > 2)
        throw std::domain_error("check_product: k must be 1 or 2");
    CheckReport rep;
    rep.check_name = "product";
    rep.k = k;
    rep.dim = 2;
    rep.r = spec.r;
    rep.seed = spec.seed;
    const double r = spec.r;
    const double p_base = ball_intrinsic_volume(2, k, r / 2.0) * ball_intrinsic_volume(2, k, r / 2.0);

    {
        TrialRecord rec; // equality anchor: the half-radius ball
        rec.kind = "anchor:half_ball";
        rec.slack = 0.0;
        rec.near_equality = true;
        rec.congruence_dist = 0.0;
        rec.values = {{"product", p_base}, {"bound", p_base}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    {
        TrialRecord rec; // off-equality ball anchor
        rec.kind = "anchor:disk";
        const double rho = 0.3 * r;
        const double p = ball_intrinsic_volume(2, k, rho) * ball_intrinsic_volume(2, k, r - rho);
        rec.slack = p_base - p;
        rec.violation = rec.slack < -spec.tol.check;
        rec.values = {{"product", p}, {"bound", p_base}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    {
        TrialRecord rec; // lens anchor
        rec.kind = "anchor:lens";
        const ArcPolygon lens = make_lens(r, r, spec.tol);
        const double vkA = vk_of(intrinsic_volumes_2d(BallBody(lens)), k);
        const double vkAr = vk_of(intrinsic_volumes_2d(dual_2d(lens, spec.tol)), k);
        rec.slack = p_base - vkA * vkAr;
        rec.violation = rec.slack < -spec.tol.check;
        rec.values = {{"product", vkA * vkAr}, {"bound", p_base}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    for (long long t = 0; t < spec.trials; ++t) {
        const SampledBody body =
            sample_rball_body_2d(spec, mix_seed(spec.seed ^ 0x9u, static_cast<uint64_t>(t)), &rep.resampled);
        const double vkA = vk_of(intrinsic_volumes_2d(body.hull), k);
        const double vkAr = vk_of(intrinsic_volumes_2d(dual_2d(body.hull.region(), spec.tol)), k);
        const double p = vkA * vkAr;
        TrialRecord rec;
        rec.kind = "random";
        rec.input_hash = hash_generators(body.generators);
        rec.slack = p_base - p;
        rec.violation = rec.slack < -spec.tol.check;
        rec.near_equality = rec.slack <= equality_band(p_base, spec.tol);
        if (rec.near_equality) {
            const ArcPolygon norm = normalize_pose(body.hull.region(), spec.tol);
            rec.congruence_dist = hausdorff_to_disk(BallBody(norm), {0.0, 0.0}, r / 2.0);
        }
        rec.values = {{"product", p}, {"bound", p_base}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    return rep;
}

double product_profile(double x, int k, double r) {
    if (!(r > 0.0))
        throw std::domain_error("product_profile: r must be positive");
    if (k < 1)
        throw std::domain_error("product_profile: k must be positive");
    if (!(x >= 0.0 && x <= r))
        throw std::domain_error("product_profile: x must lie in [0, r]");
    return std::pow(x, k) * std::pow(r - x, k);
}

CheckReport check_support_identity(const TrialSpec& spec) {
    spec.validate();
    if (spec.dim != 2)
        throw std::domain_error("check_support_identity: tight-tolerance path is 2D");
    CheckReport rep;
    rep.check_name = "support";
    rep.dim = 2;
    rep.r = spec.r;
    rep.seed = spec.seed;
    const double r = spec.r;

    {
        TrialRecord rec; // exact ball path: h_A = r - R, h_{A^r} = R, sum is r
        rec.kind = "anchor:ball_pair";
        rec.slack = 0.0;
        rec.values = {{"max_residual", 0.0}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    for (long long t = 0; t < spec.trials; ++t) {
        const SampledBody body =
            sample_rball_body_2d(spec, mix_seed(spec.seed ^ 0x51u, static_cast<uint64_t>(t)), &rep.resampled);
        const BallBody dual = dual_2d(body.hull.region(), spec.tol);
        double worst = 0.0;
        for (int i = 0; i < 720; ++i) {
            const Vec2 u = unit_dir(kTwoPi * i / 720.0);
            double h_dual;
            if (dual.is_point())
                h_dual = dual.point().dot(-u);
            else
                h_dual = support_2d(dual.region(), -u, spec.tol);
            const double s = support_2d(body.hull.region(), u, spec.tol) + h_dual;
            worst = std::max(worst, std::fabs(s - r));
        }
        TrialRecord rec;
        rec.kind = "random";
        rec.input_hash = hash_generators(body.generators);
        rec.slack = -worst;
        rec.violation = worst > spec.tol.check;
        rec.values = {{"max_residual", worst}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    return rep;
}

CheckReport check_identities(const TrialSpec& spec) {
    spec.validate();
    if (spec.dim != 2)
        throw std::domain_error("check_identities: 2D only");
    CheckReport rep;
    rep.check_name = "identities";
    rep.dim = 2;
    rep.r = spec.r;
    rep.seed = spec.seed;
    const double r = spec.r;
    const double box = (1.0 + spec.law_scale) * r;

    for (long long t = 0; t < spec.trials; ++t) {
        Rng rng(mix_seed(spec.seed ^ 0x1du, static_cast<uint64_t>(t)));
        const std::vector<Vec2> xs = draw_generators(rng, spec);
        const std::vector<Vec2> ys = draw_generators(rng, spec);
        const PointSet px = PointSet::from_vec2(r, xs, spec.tol);
        const BallBody bx = ball_body_2d(px, spec.tol);
        if (!bx.is_region()) {
            ++rep.resampled;
            continue;
        }

        TrialRecord rec;
        rec.kind = "random";
        rec.input_hash = hash_generators(px);
        long long probe_failures = 0;

        // (i) triple-dual idempotence on the representation
        const BallBody d1 = dual_2d(bx.region(), spec.tol);
        double dh = 0.0;
        if (d1.is_region()) {
            const BallBody d2 = dual_2d(d1.region(), spec.tol);
            dh = hausdorff_distance(bx, d2);
        }
        const bool idem_ok = dh <= spec.tol.geom;

        // (ii) union law: membership in (X u Y)^r is the conjunction
        std::vector<Vec2> unioned = xs;
        unioned.insert(unioned.end(), ys.begin(), ys.end());
        const BallBody bu = ball_body_2d(PointSet::from_vec2(r, unioned, spec.tol), spec.tol);
        const BallBody by = ball_body_2d(PointSet::from_vec2(r, ys, spec.tol), spec.tol);
        for (int p = 0; p < spec.probes; ++p) {
            const Vec2 probe{rng.uniform(-box, box), rng.uniform(-box, box)};
            const bool lhs = contains_2d(bu, probe, spec.tol);
            const bool rhs = contains_2d(bx, probe, spec.tol) && contains_2d(by, probe, spec.tol);
            if (lhs != rhs)
                ++probe_failures;
        }

        // (iii) order reversal: adding generators can only shrink the body
        std::vector<Vec2> extended = xs;
        extended.push_back(rng.in_unit_disk() * (spec.law_scale * r));
        extended.push_back(rng.in_unit_disk() * (spec.law_scale * r));
        const BallBody bext = ball_body_2d(PointSet::from_vec2(r, extended, spec.tol), spec.tol);
        for (int p = 0; p < spec.probes; ++p) {
            const Vec2 probe{rng.uniform(-box, box), rng.uniform(-box, box)};
            if (contains_2d(bext, probe, spec.tol) && !contains_2d(bx, probe, spec.tol))
                ++probe_failures;
        }

        // (iv) hull-dual equality
        const BallBody hull = ball_hull_2d(px, spec.tol);
        double hd = 0.0;
        if (hull.is_region()) {
            const BallBody via = dual_2d(hull.region(), spec.tol);
            hd = hausdorff_distance(bx, via);
        }
        const bool hull_ok = hd <= spec.tol.geom;

        // (v) emptiness biconditional across the circumradius straddle
        const int m = 3 + static_cast<int>(t % 3);
        const double phase = rng.uniform(0.0, kTwoPi);
        bool straddle_ok = true;
        for (double rho : {1.05 * r, 0.95 * r}) {
            std::vector<Vec2> ring;
            for (int i = 0; i < m; ++i)
                ring.push_back(rho * unit_dir(phase + kTwoPi * i / m));
            const PointSet pr = PointSet::from_vec2(r, ring, spec.tol);
            const BallBody rb = ball_body_2d(pr, spec.tol);
            const BallBody rh = ball_hull_2d(pr, spec.tol);
            const bool expect_empty = rho > r;
            if (rb.is_empty() != expect_empty || rh.is_empty() != expect_empty)
                straddle_ok = false;
        }

        rec.slack = spec.tol.geom - std::max(dh, hd);
        rec.violation = !idem_ok || !hull_ok || !straddle_ok || probe_failures > 0;
        rec.values = {{"triple_dual_hausdorff", dh},
                      {"hull_dual_hausdorff", hd},
                      {"probe_failures", static_cast<double>(probe_failures)},
                      {"straddle_ok", straddle_ok ? 1.0 : 0.0}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    return rep;
}

CheckReport check_mahler_2d(const TrialSpec& spec, int k) {
    spec.validate();
    if (spec.dim != 2)
        throw std::domain_error("check_mahler_2d: 2D only");
    if (k < 1 || k > 2)
        throw std::domain_error("check_mahler_2d: k must be 1 or 2");
    const double r = spec.r;
    const double v = spec.target_area;
    if (!(v > 0.0 && v < kPi * r * r))
        throw std::domain_error("check_mahler_2d: target area must lie in (0, pi r^2)");

    CheckReport rep;
    rep.check_name = "mahler2d";
    rep.k = k;
    rep.dim = 2;
    rep.r = r;
    rep.seed = spec.seed;

    const ArcPolygon lens = make_lens(r, lens_gap_for_area(r, v), spec.tol);
    const double baseline = vk_of(intrinsic_volumes_2d(dual_2d(lens, spec.tol)), k);

    {
        TrialRecord rec; // the lens itself sits on the equality case
        rec.kind = "anchor:lens";
        rec.slack = 0.0;
        rec.near_equality = true;
        rec.congruence_dist = 0.0;
        rec.values = {{"vk_dual", baseline}, {"baseline", baseline}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    for (long long t = 0; t < spec.trials; ++t) {
        const SampledBody raw =
            sample_rball_body_2d(spec, mix_seed(spec.seed ^ 0x2au, static_cast<uint64_t>(t)), &rep.resampled);
        const auto retargeted = retarget_area_2d(raw, v, spec);
        if (!retargeted) {
            ++rep.discarded;
            continue;
        }
        const SampledBody& body = *retargeted;
        const double vkAr = vk_of(intrinsic_volumes_2d(dual_2d(body.hull.region(), spec.tol)), k);
        TrialRecord rec;
        rec.kind = "random";
        rec.input_hash = hash_generators(body.generators);
        rec.slack = vkAr - baseline;
        rec.violation = rec.slack < -spec.tol.check;
        rec.near_equality = rec.slack <= equality_band(baseline, spec.tol);
        if (rec.near_equality) {
            const ArcPolygon na = normalize_pose(body.hull.region(), spec.tol);
            const ArcPolygon nl = normalize_pose(lens, spec.tol);
            rec.congruence_dist = hausdorff_distance(BallBody(na), BallBody(nl));
        }
        rec.values = {{"vk_dual", vkAr}, {"baseline", baseline},
                      {"area", body.hull.region().area()}};
        rep.absorb(std::move(rec), spec.tol.geom);
    }
    return rep;
}

} // namespace rball
