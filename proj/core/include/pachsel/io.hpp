#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "pachsel/arrangement.hpp"
#include "pachsel/certificate.hpp"
#include "pachsel/constructions.hpp"
#include "pachsel/point_set.hpp"

namespace pachsel::io {

using nlohmann::json;

// Coordinates are written as numbers when every one of them is exactly a
// double, otherwise as "p/q" strings. Both forms are accepted on input.
json point_to_json(const Point& p);
Point point_from_json(const json& j);

// {"dim": d, "exact": bool, "colors": [[point, ...], ...]}
json point_set_to_json(const LabeledPointSet& set);
LabeledPointSet point_set_from_json(const json& j);

// {"dim": d, "oriented": true, "hyperplanes": [{"normal": [...], "offset": "p/q"}, ...],
//  "vertices": [...]}; the central simplex is on every negative side.
json arrangement_to_json(const arrangements::HyperplaneArrangement& arr);
arrangements::HyperplaneArrangement arrangement_from_json(const json& j);

json certificate_to_json(const selection::PachCertificate& cert);
selection::PachCertificate certificate_from_json(const json& j);

json verification_to_json(const selection::VerificationReport& report);

// {"dim": d, "colors": [[{"point": [...], "weight": "r/s"}, ...], ...]}
json measure_to_json(const constructions::WeightedPointMeasure& m);
constructions::WeightedPointMeasure measure_from_json(const json& j);

// 64-bit FNV-1a of the compact dump, as 16 hex digits. Object keys are
// sorted, so equal documents hash equally.
std::string canonical_hash(const json& j);

// Throws ParseError on unreadable or malformed files.
json read_json_file(const std::filesystem::path& path);
// Pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const json& j);
std::string dump(const json& j);

}  // namespace pachsel::io
