#include "core/json_io.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace rball {

using nlohmann::json;

namespace {

json vec2_json(Vec2 v) { return json::array({v.x, v.y}); }

json body_json_obj(const BallBody& body, double radius) {
    if (body.is_empty())
        return json{{"result", "empty"}, {"r", radius}};
    if (body.is_point())
        return json{{"result", "point"},
                    {"point", vec2_json(body.point())},
                    {"r", radius}};
    const ArcPolygon& a = body.region();
    json arcs = json::array();
    for (const Arc& arc : a.arcs())
        arcs.push_back(json{{"center", vec2_json(arc.center)},
                            {"start_angle", arc.start_angle},
                            {"end_angle", arc.end_angle}});
    json vertices = json::array();
    for (Vec2 v : a.vertices())
        vertices.push_back(vec2_json(v));
    return json{{"r", a.radius()},
                {"full_disk", a.full_disk()},
                {"arcs", std::move(arcs)},
                {"vertices", std::move(vertices)}};
}

double finite_number(const json& j, const char* what) {
    if (!j.is_number())
        throw ParseError(std::string("expected a number for ") + what);
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw ParseError(std::string("non-finite value for ") + what);
    return v;
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ParseError("malformed JSON document");
    return j;
}

json record_json(const CheckReport& rep, const TrialRecord& rec) {
    json values = json::object();
    for (const auto& [name, value] : rec.values)
        values[name] = value;
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(rec.input_hash));
    json j{{"check", rep.check_name}, {"k", rep.k},
           {"trial", rec.index},      {"kind", rec.kind},
           {"input_hash", hash},      {"slack", rec.slack},
           {"violation", rec.violation}, {"values", std::move(values)}};
    if (rec.near_equality) {
        j["near_equality"] = true;
        j["congruence_dist"] = rec.congruence_dist;
    }
    return j;
}

} // namespace

std::string pointset_to_json(const PointSet& ps) {
    json points = json::array();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        json p = json::array();
        for (double c : ps.point(i))
            p.push_back(c);
        points.push_back(std::move(p));
    }
    return json{{"dim", ps.dim()}, {"r", ps.radius()}, {"points", std::move(points)}}
        .dump();
}

PointSet pointset_from_json(const std::string& text, const Tolerances& tol) {
    const json j = parse(text);
    if (!j.is_object() || !j.contains("dim") || !j.contains("r") || !j.contains("points"))
        throw ParseError("point set file needs dim, r, and points");
    if (!j["dim"].is_number_integer())
        throw ParseError("dim must be an integer");
    const int dim = j["dim"].get<int>();
    const double r = finite_number(j["r"], "r");
    if (!j["points"].is_array() || j["points"].empty())
        throw ParseError("points must be a nonempty array");
    std::vector<std::vector<double>> pts;
    for (const auto& p : j["points"]) {
        if (!p.is_array())
            throw ParseError("each point must be an array of coordinates");
        std::vector<double> row;
        for (const auto& c : p)
            row.push_back(finite_number(c, "coordinate"));
        pts.push_back(std::move(row));
    }
    try {
        return PointSet(dim, r, std::move(pts), tol);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

std::string body_to_json(const BallBody& body, double radius) {
    return body_json_obj(body, radius).dump();
}

BallBody body_from_json(const std::string& text, double* radius_out, const Tolerances& tol) {
    const json j = parse(text);
    if (!j.is_object())
        throw ParseError("body file must be a JSON object");
    if (j.contains("result")) {
        const std::string kind = j["result"].get<std::string>();
        if (radius_out && j.contains("r"))
            *radius_out = finite_number(j["r"], "r");
        if (kind == "empty")
            return BallBody::empty();
        if (kind == "point") {
            const auto& p = j.at("point");
            return BallBody::point({finite_number(p.at(0), "point.x"),
                                    finite_number(p.at(1), "point.y")});
        }
        throw ParseError("unknown result kind: " + kind);
    }
    if (!j.contains("r") || !j.contains("arcs"))
        throw ParseError("arc polygon file needs r and arcs");
    const double r = finite_number(j["r"], "r");
    if (radius_out)
        *radius_out = r;
    std::vector<Arc> arcs;
    for (const auto& a : j["arcs"]) {
        Arc arc;
        arc.center = {finite_number(a.at("center").at(0), "center.x"),
                      finite_number(a.at("center").at(1), "center.y")};
        arc.start_angle = finite_number(a.at("start_angle"), "start_angle");
        arc.end_angle = finite_number(a.at("end_angle"), "end_angle");
        arcs.push_back(arc);
    }
    try {
        ArcPolygon poly(r, std::move(arcs));
        poly.validate(tol);
        if (j.contains("vertices")) {
            const auto& verts = j["vertices"];
            if (verts.size() != poly.vertices().size())
                throw ParseError("vertex count disagrees with the arc structure");
            for (std::size_t i = 0; i < poly.vertices().size(); ++i) {
                const Vec2 v{finite_number(verts.at(i).at(0), "vertex.x"),
                             finite_number(verts.at(i).at(1), "vertex.y")};
                if (dist(v, poly.vertices()[i]) > 1e-9)
                    throw ParseError("vertices disagree with the arc structure");
            }
        }
        return BallBody(std::move(poly));
    } catch (const std::logic_error& e) {
        throw ParseError(std::string("invalid arc polygon: ") + e.what());
    }
}

std::string vk_estimate_to_json(const VkEstimate& est) {
    return json{{"k", est.k},
                {"value", est.value},
                {"std_error", est.std_error},
                {"method", to_string(est.method)},
                {"samples", est.samples},
                {"seed", est.seed}}
        .dump();
}

std::string report_to_json(const CheckReport& rep) {
    json records = json::array();
    for (const auto& rec : rep.records)
        records.push_back(record_json(rep, rec));
    return json{{"check", rep.check_name},
                {"k", rep.k},
                {"dim", rep.dim},
                {"r", rep.r},
                {"seed", rep.seed},
                {"trials", rep.trials_run},
                {"resampled", rep.resampled},
                {"discarded", rep.discarded},
                {"violations", rep.violations},
                {"equality_cases", rep.equality_cases},
                {"equality_failures", rep.equality_failures},
                {"worst_margin", rep.worst_margin},
                {"records", std::move(records)}}
        .dump();
}

std::string report_to_jsonl(const CheckReport& rep) {
    std::ostringstream out;
    for (const auto& rec : rep.records)
        out << record_json(rep, rec).dump() << '\n';
    return out.str();
}

std::string report_csv_header() { return "check,trials,violations,worst_margin,seed\n"; }

std::string report_csv_row(const CheckReport& rep) {
    json margin = rep.worst_margin; // shortest round-trip formatting
    std::ostringstream out;
    out << rep.check_name << ',' << rep.trials_run << ',' << rep.violations << ','
        << margin.dump() << ',' << rep.seed << '\n';
    return out.str();
}

std::string search_result_to_json(const SearchResult& res) {
    json traces = json::array();
    for (const auto& t : res.trace) {
        // keep the improvements only; full traces repeat values
        json one = json::array();
        double last = 1e300;
        for (double v : t)
            if (v < last) {
                one.push_back(v);
                last = v;
            }
        traces.push_back(std::move(one));
    }
    json gens = json::array();
    const std::size_t n = res.best_generators.size() / static_cast<std::size_t>(res.dim);
    for (std::size_t i = 0; i < n; ++i) {
        json p = json::array();
        for (int c = 0; c < res.dim; ++c)
            p.push_back(res.best_generators[i * static_cast<std::size_t>(res.dim) +
                                            static_cast<std::size_t>(c)]);
        gens.push_back(std::move(p));
    }
    json j{{"dim", res.dim},
           {"r", res.r},
           {"k", res.k},
           {"seed", res.seed},
           {"feasible", res.feasible},
           {"exploratory", res.exploratory},
           {"best_objective", res.best_objective},
           {"constraint_residual", res.constraint_residual},
           {"baseline", res.baseline},
           {"gap", res.gap},
           {"best_generators", std::move(gens)},
           {"trace", std::move(traces)}};
    if (!res.note.empty())
        j["note"] = res.note;
    if (res.normalized_shape)
        j["normalized_shape"] = json::parse(body_to_json(BallBody(*res.normalized_shape),
                                                         res.normalized_shape->radius()));
    return j.dump();
}

} // namespace rball
