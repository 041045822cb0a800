#pragma once

#include <string>

#include "core/arcpoly.hpp"
#include "core/geom.hpp"
#include "core/ndbody.hpp"
#include "core/search.hpp"
#include "core/verify.hpp"

namespace rball {

// JSON codecs for the file formats. Numbers serialize with shortest
// round-trip formatting and objects carry sorted keys, so save(load(x))
// is byte-identical.

std::string pointset_to_json(const PointSet& ps);
PointSet pointset_from_json(const std::string& text, const Tolerances& tol = {});

// regions serialize as {r, full_disk, arcs, vertices}; the empty body and
// single points as {"result": "empty"} / {"result": "point", ...}
std::string body_to_json(const BallBody& body, double radius);
BallBody body_from_json(const std::string& text, double* radius_out = nullptr,
                        const Tolerances& tol = {});

std::string vk_estimate_to_json(const VkEstimate& est);

std::string report_to_json(const CheckReport& rep);
std::string report_to_jsonl(const CheckReport& rep); // one record per line
std::string report_csv_header();
std::string report_csv_row(const CheckReport& rep);

std::string search_result_to_json(const SearchResult& res);

} // namespace rball
