// Command-line front end: constructions, verification suites, and the
// fixed-volume minimization search, with JSON/CSV/SVG artifacts. Links the C
// API only.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rball.h"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

struct CliError {
    std::string kind;
    std::string detail;
};

[[noreturn]] void die(const std::string& kind, const std::string& detail) {
    throw CliError{kind, detail};
}

void check_status(rb_status st) {
    if (st == RB_OK)
        return;
    const char* kind = st == RB_ERR_PARSE ? "parse"
                       : st == RB_ERR_DOMAIN ? "domain"
                       : st == RB_ERR_CONVERGENCE ? "convergence"
                                                  : "internal";
    die(kind, rb_last_error());
}

struct StringHandle {
    char* ptr = nullptr;
    ~StringHandle() { rb_string_free(ptr); }
    std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

using PointsetPtr = std::unique_ptr<rb_pointset, decltype(&rb_pointset_free)>;
using BodyPtr = std::unique_ptr<rb_body2d, decltype(&rb_body2d_free)>;
using NdPtr = std::unique_ptr<rb_ndbody, decltype(&rb_ndbody_free)>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        die("input", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// atomic write: temp file in the target directory, then rename
void write_file(const std::string& path, const std::string& content) {
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            die("output", "cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

PointsetPtr load_pointset(const std::string& path) {
    rb_pointset* ps = nullptr;
    check_status(rb_pointset_from_json(read_file(path).c_str(), &ps));
    return PointsetPtr(ps, rb_pointset_free);
}

BodyPtr load_body(const std::string& path) {
    rb_body2d* body = nullptr;
    check_status(rb_body2d_from_json(read_file(path).c_str(), &body));
    return BodyPtr(body, rb_body2d_free);
}

std::string body_json(const rb_body2d* body) {
    StringHandle s{rb_body2d_to_json(body)};
    return s.str();
}

// ---- SVG rendering ------------------------------------------------------

struct SvgCanvas {
    std::ostringstream paths;
    double min_x = -1.3, max_x = 1.3, min_y = -1.3, max_y = 1.3;
    static constexpr double kScale = 200.0; // px per unit length

    double px(double x) const { return (x - min_x) * kScale; }
    double py(double y) const { return (max_y - y) * kScale; }

    void expand(double x, double y) {
        min_x = std::min(min_x, x - 0.1);
        max_x = std::max(max_x, x + 0.1);
        min_y = std::min(min_y, y - 0.1);
        max_y = std::max(max_y, y + 0.1);
    }

    void add_circle(double cx, double cy, double r, const std::string& style) {
        expand(cx - r, cy - r);
        expand(cx + r, cy + r);
        paths << "  <circle cx=\"" << px(cx) << "\" cy=\"" << py(cy) << "\" r=\""
              << r * kScale << "\" " << style << "/>\n";
    }

    void add_body(const rb_body2d* body, const std::string& style) {
        const rb_body_kind kind = rb_body2d_kind(body);
        if (kind == RB_BODY_EMPTY)
            return;
        if (kind == RB_BODY_POINT) {
            double x = 0, y = 0;
            rb_body2d_point(body, &x, &y);
            expand(x, y);
            paths << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y)
                  << "\" r=\"3\" " << style << "/>\n";
            return;
        }
        if (rb_body2d_full_disk(body)) {
            double cx = 0, cy = 0, a0 = 0, a1 = 0;
            rb_body2d_arc(body, 0, &cx, &cy, &a0, &a1);
            add_circle(cx, cy, rb_body2d_radius(body), style);
            return;
        }
        const size_t n = rb_body2d_arc_count(body);
        const double r = rb_body2d_radius(body);
        std::ostringstream d;
        for (size_t i = 0; i < n; ++i) {
            double cx = 0, cy = 0, a0 = 0, a1 = 0;
            rb_body2d_arc(body, i, &cx, &cy, &a0, &a1);
            const double sx = cx + r * std::cos(a0), sy = cy + r * std::sin(a0);
            const double ex = cx + r * std::cos(a1), ey = cy + r * std::sin(a1);
            expand(sx, sy);
            expand(ex, ey);
            if (i == 0)
                d << "M " << px(sx) << ' ' << py(sy) << ' ';
            // counterclockwise in math coordinates is sweep=0 under the y flip
            d << "A " << r * kScale << ' ' << r * kScale << " 0 0 0 " << px(ex) << ' '
              << py(ey) << ' ';
        }
        d << 'Z';
        paths << "  <path d=\"" << d.str() << "\" " << style << "/>\n";
    }

    std::string finish() const {
        std::ostringstream out;
        const double w = (max_x - min_x) * kScale, h = (max_y - min_y) * kScale;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
            << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
        out << "  <rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
        out << paths.str();
        out << "</svg>\n";
        return out.str();
    }
};

// ---- subcommands ---------------------------------------------------------

struct CommonOpts {
    std::string input, output;
    long long samples = 200000;
    uint64_t seed = 0;
    int directions = 400;
    double tol = 1e-6;
};

json nd_estimates(const rb_ndbody* body, const CommonOpts& opt) {
    json out;
    out["nonempty"] = rb_ndbody_nonempty(body) != 0;
    double value = 0, se = 0;
    check_status(rb_ndbody_volume(body, opt.samples, opt.seed, &value, &se));
    out["vd"] = {{"value", value}, {"std_error", se}, {"samples", opt.samples},
                 {"seed", opt.seed}, {"method", "monte_carlo"}};
    if (rb_ndbody_nonempty(body)) {
        check_status(rb_ndbody_v1(body, opt.directions, opt.tol, &value, &se));
        out["v1"] = {{"value", value}, {"std_error", se},
                     {"directions", opt.directions}, {"method", "mean_width"}};
    }
    return out;
}

int cmd_body(const CommonOpts& opt, bool hull) {
    PointsetPtr ps = load_pointset(opt.input);
    const int dim = rb_pointset_dim(ps.get());
    if (dim == 2) {
        rb_body2d* raw = nullptr;
        check_status(hull ? rb_hull2d_compute(ps.get(), &raw)
                          : rb_body2d_compute(ps.get(), &raw));
        BodyPtr body(raw, rb_body2d_free);
        write_file(opt.output, body_json(body.get()) + "\n");
        return kExitOk;
    }
    if (hull)
        die("usage", "the hull construction emits arc polygons and is 2D only");
    rb_ndbody* raw = nullptr;
    check_status(rb_ndbody_create(ps.get(), &raw));
    NdPtr body(raw, rb_ndbody_free);
    StringHandle gens{rb_pointset_to_json(ps.get())};
    json out = nd_estimates(body.get(), opt);
    out["generators"] = json::parse(gens.str());
    write_file(opt.output, out.dump() + "\n");
    return kExitOk;
}

int cmd_dual(const CommonOpts& opt) {
    BodyPtr body = load_body(opt.input);
    if (rb_body2d_kind(body.get()) != RB_BODY_REGION)
        die("domain", "the dual construction needs a region input");
    rb_body2d* raw = nullptr;
    check_status(rb_body2d_dual(body.get(), &raw));
    BodyPtr dual(raw, rb_body2d_free);
    write_file(opt.output, body_json(dual.get()) + "\n");
    return kExitOk;
}

int cmd_volumes(const CommonOpts& opt) {
    const std::string text = read_file(opt.input);
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded())
        die("parse", "malformed JSON in " + opt.input);
    json out;
    if (doc.contains("points")) {
        rb_pointset* raw = nullptr;
        check_status(rb_pointset_from_json(text.c_str(), &raw));
        PointsetPtr ps(raw, rb_pointset_free);
        if (rb_pointset_dim(ps.get()) == 2) {
            rb_body2d* braw = nullptr;
            check_status(rb_body2d_compute(ps.get(), &braw));
            BodyPtr body(braw, rb_body2d_free);
            double v1 = 0, v2 = 0;
            check_status(rb_body2d_intrinsic_volumes(body.get(), &v1, &v2));
            out = {{"v1", v1}, {"v2", v2}, {"method", "exact2d"}};
        } else {
            rb_ndbody* nraw = nullptr;
            check_status(rb_ndbody_create(ps.get(), &nraw));
            NdPtr body(nraw, rb_ndbody_free);
            out = nd_estimates(body.get(), opt);
        }
    } else {
        BodyPtr body = load_body(opt.input);
        double v1 = 0, v2 = 0;
        check_status(rb_body2d_intrinsic_volumes(body.get(), &v1, &v2));
        out = {{"v1", v1}, {"v2", v2}, {"method", "exact2d"}};
    }
    write_file(opt.output, out.dump() + "\n");
    return kExitOk;
}

struct VerifyOpts {
    std::string suite;
    std::string out_dir = ".";
    int dim = 2;
    int k = 1;
    double r = 1.0;
    long long trials = 1000;
    uint64_t seed = 0;
    int min_generators = 2;
    int max_generators = 8;
    std::string law = "uniform_disk";
    double law_scale = 0.6;
    int probes = 1000;
    double target_area = -1.0;
    long long mc_samples = 200000;
    int mc_directions = 400;
};

int cmd_verify(const VerifyOpts& opt) {
    const json config{{"dim", opt.dim},
                      {"k", opt.k},
                      {"r", opt.r},
                      {"trials", opt.trials},
                      {"seed", opt.seed},
                      {"min_generators", opt.min_generators},
                      {"max_generators", opt.max_generators},
                      {"law", opt.law},
                      {"law_scale", opt.law_scale},
                      {"probes", opt.probes},
                      {"target_area", opt.target_area},
                      {"mc_samples", opt.mc_samples},
                      {"mc_directions", opt.mc_directions}};
    rb_status st = RB_OK;
    StringHandle rep{rb_verify_run(opt.suite.c_str(), config.dump().c_str(), &st)};
    check_status(st);
    const json report = json::parse(rep.str());

    fs::create_directories(opt.out_dir);
    std::ostringstream base;
    base << opt.suite << "_d" << opt.dim;
    if (opt.suite == "bs" || opt.suite == "product" || opt.suite == "mahler2d")
        base << "_k" << opt.k;
    base << "_seed" << opt.seed;

    std::ostringstream jsonl;
    for (const auto& rec : report.at("records"))
        jsonl << rec.dump() << '\n';
    write_file(opt.out_dir + "/" + base.str() + ".jsonl", jsonl.str());

    std::ostringstream csv;
    csv << "check,trials,violations,worst_margin,seed\n";
    csv << report.at("check").get<std::string>() << ',' << report.at("trials") << ','
        << report.at("violations") << ',' << report.at("worst_margin").dump() << ','
        << report.at("seed") << '\n';
    write_file(opt.out_dir + "/" + base.str() + "_summary.csv", csv.str());

    const long long violations = report.at("violations").get<long long>();
    std::cout << "check=" << report.at("check").get<std::string>()
              << " trials=" << report.at("trials") << " violations=" << violations
              << " worst_margin=" << report.at("worst_margin").dump()
              << " seed=" << report.at("seed") << "\n";
    return violations == 0 ? kExitOk : kExitViolations;
}

struct SearchOpts {
    int dim = 2;
    int k = 1;
    double r = 1.0;
    double v = 1.0;
    int n = 2;
    int restarts = 20;
    long long max_evals = 20000;
    uint64_t seed = 0;
    long long mc_samples = 20000;
    int mc_directions = 96;
    std::string output;
    std::string svg;
};

int cmd_search(const SearchOpts& opt) {
    double vmax = 0.0;
    check_status(rb_omega(opt.dim, &vmax));
    vmax *= std::pow(opt.r, opt.dim);
    if (!(opt.v > 0.0 && opt.v < vmax)) {
        std::ostringstream msg;
        msg << "target volume must lie in (0, " << vmax << ") = (0, omega_d r^d)";
        die("usage", msg.str());
    }
    const json config{{"dim", opt.dim},       {"k", opt.k},
                      {"r", opt.r},           {"v", opt.v},
                      {"n", opt.n},           {"restarts", opt.restarts},
                      {"max_evals", opt.max_evals}, {"seed", opt.seed},
                      {"mc_samples", opt.mc_samples}, {"mc_directions", opt.mc_directions}};
    rb_status st = RB_OK;
    StringHandle res{rb_search_run(config.dump().c_str(), &st)};
    check_status(st);
    const json result = json::parse(res.str());
    if (!opt.output.empty())
        write_file(opt.output, result.dump() + "\n");
    else
        std::cout << result.dump() << "\n";

    if (!opt.svg.empty() && opt.dim == 2 && result.value("feasible", false)) {
        // rebuild the best body and its dual through the API for drawing
        std::vector<double> flat;
        for (const auto& p : result.at("best_generators"))
            for (const auto& c : p)
                flat.push_back(c.get<double>());
        rb_pointset* praw = nullptr;
        check_status(rb_pointset_create(2, opt.r, flat.data(), flat.size() / 2, &praw));
        PointsetPtr ps(praw, rb_pointset_free);
        rb_body2d* hraw = nullptr;
        check_status(rb_hull2d_compute(ps.get(), &hraw));
        BodyPtr hull(hraw, rb_body2d_free);

        SvgCanvas canvas;
        canvas.add_circle(0.0, 0.0, opt.r,
                          "fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"6 4\"");
        canvas.add_body(hull.get(),
                        "fill=\"#4477aa33\" stroke=\"#4477aa\" stroke-width=\"2\"");
        if (rb_body2d_kind(hull.get()) == RB_BODY_REGION) {
            rb_body2d* draw = nullptr;
            check_status(rb_body2d_dual(hull.get(), &draw));
            BodyPtr dual(draw, rb_body2d_free);
            canvas.add_body(dual.get(),
                            "fill=\"#22883333\" stroke=\"#228833\" stroke-width=\"2\"");
        }
        double gap = 0.0;
        if (rb_lens_gap_for_area(opt.r, opt.v, &gap) == RB_OK) {
            rb_body2d* lraw = nullptr;
            check_status(rb_make_lens(opt.r, gap, &lraw));
            BodyPtr lens(lraw, rb_body2d_free);
            canvas.add_body(lens.get(),
                            "fill=\"none\" stroke=\"#cc3311\" stroke-width=\"1.5\" "
                            "stroke-dasharray=\"4 3\"");
        }
        write_file(opt.svg, canvas.finish());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"r-ball bodies: exact planar kernel, dimension-d estimators, "
                 "inequality verification suites, and a fixed-volume minimization "
                 "search"};
    app.require_subcommand(1);

    CommonOpts body_opt, hull_opt, dual_opt, vol_opt;
    auto add_common = [](CLI::App* cmd, CommonOpts& opt, bool needs_output) {
        cmd->add_option("--input", opt.input, "input JSON file")->required();
        auto* o = cmd->add_option("--output", opt.output, "output JSON file");
        if (needs_output)
            o->required();
        cmd->add_option("--samples", opt.samples, "Monte Carlo samples (d >= 3)");
        cmd->add_option("--seed", opt.seed, "Monte Carlo seed (d >= 3)");
        cmd->add_option("--dirs", opt.directions, "mean-width directions (d >= 3)");
        cmd->add_option("--tol", opt.tol, "support tolerance (d >= 3)");
    };
    add_common(app.add_subcommand("body", "intersection of radius-r balls about the generators"),
               body_opt, true);
    add_common(app.add_subcommand("hull", "r-ball convex hull of the generators (2D)"),
               hull_opt, true);
    add_common(app.add_subcommand("dual", "A^r of an arc-polygon region"), dual_opt, true);
    add_common(app.add_subcommand("volumes", "intrinsic volumes of a body or point set"),
               vol_opt, true);

    VerifyOpts verify_opt;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", verify_opt.suite, "bs | product | support | identities | mahler2d")
        ->required();
    verify->add_option("--dim", verify_opt.dim);
    verify->add_option("--k", verify_opt.k);
    verify->add_option("--r", verify_opt.r);
    verify->add_option("--trials", verify_opt.trials);
    verify->add_option("--seed", verify_opt.seed);
    verify->add_option("--min-gen", verify_opt.min_generators);
    verify->add_option("--max-gen", verify_opt.max_generators);
    verify->add_option("--law", verify_opt.law, "uniform_disk | gaussian | clustered");
    verify->add_option("--law-scale", verify_opt.law_scale);
    verify->add_option("--probes", verify_opt.probes);
    verify->add_option("--v", verify_opt.target_area, "target area (mahler2d)");
    verify->add_option("--mc-samples", verify_opt.mc_samples);
    verify->add_option("--mc-directions", verify_opt.mc_directions);
    verify->add_option("--out-dir", verify_opt.out_dir);

    SearchOpts search_opt;
    auto* search = app.add_subcommand("search", "minimize V_k(A^r) at fixed volume");
    search->add_option("--dim", search_opt.dim);
    search->add_option("--k", search_opt.k);
    search->add_option("--r", search_opt.r);
    search->add_option("--v", search_opt.v, "target volume")->required();
    search->add_option("--n", search_opt.n, "generator count");
    search->add_option("--restarts", search_opt.restarts);
    search->add_option("--max-evals", search_opt.max_evals);
    search->add_option("--seed", search_opt.seed);
    search->add_option("--mc-samples", search_opt.mc_samples);
    search->add_option("--mc-directions", search_opt.mc_directions);
    search->add_option("--output", search_opt.output, "result JSON path");
    search->add_option("--svg", search_opt.svg, "SVG rendering of the best body");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help
        json err{{"error", "usage"}, {"detail", e.what()}};
        std::cerr << err.dump() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("body"))
            return cmd_body(body_opt, false);
        if (app.got_subcommand("hull"))
            return cmd_body(hull_opt, true);
        if (app.got_subcommand("dual"))
            return cmd_dual(dual_opt);
        if (app.got_subcommand("volumes"))
            return cmd_volumes(vol_opt);
        if (app.got_subcommand("verify"))
            return cmd_verify(verify_opt);
        if (app.got_subcommand("search"))
            return cmd_search(search_opt);
    } catch (const CliError& e) {
        json err{{"error", e.kind}, {"detail", e.detail}};
        std::cerr << err.dump() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        json err{{"error", "internal"}, {"detail", e.what()}};
        std::cerr << err.dump() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
