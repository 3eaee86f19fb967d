#include "pachsel/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pachsel/errors.hpp"

namespace pachsel::io {
namespace {

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number()) return rational_from_double(j.get<double>());
  throw ParseError("expected a number or a rational string, got " + j.dump());
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array");
  return a;
}

std::size_t size_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long>() >= 0))
    throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
  return v.get<std::size_t>();
}

json rational_vector_to_json(std::span<const Rational> v) {
  bool doubles = true;
  for (const auto& c : v)
    if (rational_from_double(to_double(c)) != c) doubles = false;
  auto a = json::array();
  for (const auto& c : v) {
    if (!doubles) a.push_back(to_string(c));
    else if (c.get_den() == 1 && c.get_num().fits_slong_p()) a.push_back(c.get_num().get_si());
    else a.push_back(to_double(c));
  }
  return a;
}

RationalVector rational_vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of coordinates");
  RationalVector v;
  for (const auto& c : j) v.push_back(rational_from_json(c));
  return v;
}

}  // namespace

json point_to_json(const Point& p) { return rational_vector_to_json(p.coords()); }

Point point_from_json(const json& j) { return Point(rational_vector_from_json(j)); }

json point_set_to_json(const LabeledPointSet& set) {
  auto colors = json::array();
  for (std::size_t i = 0; i < set.num_colors(); ++i) {
    auto col = json::array();
    for (const auto& p : set.color(i)) col.push_back(point_to_json(p));
    colors.push_back(std::move(col));
  }
  return {{"dim", set.dim()}, {"exact", set.exact()}, {"colors", std::move(colors)}};
}

LabeledPointSet point_set_from_json(const json& j) {
  const std::size_t d = size_field(j, "dim");
  const bool exact = j.contains("exact") ? j.at("exact").get<bool>() : true;
  std::vector<std::vector<Point>> colors;
  for (const auto& col : array_field(j, "colors")) {
    if (!col.is_array()) throw ParseError("each color must be an array of points");
    auto& out = colors.emplace_back();
    for (const auto& p : col) out.push_back(point_from_json(p));
  }
  return LabeledPointSet(d, std::move(colors), exact);
}

json arrangement_to_json(const arrangements::HyperplaneArrangement& arr) {
  auto hs = json::array();
  for (const auto& h : arr.hyperplanes())
    hs.push_back({{"normal", rational_vector_to_json(h.normal())}, {"offset", to_string(h.offset())}});
  auto vs = json::array();
  for (const auto& v : arr.vertices()) vs.push_back(point_to_json(v));
  return {{"dim", arr.dim()}, {"oriented", true}, {"hyperplanes", std::move(hs)}, {"vertices", std::move(vs)}};
}

arrangements::HyperplaneArrangement arrangement_from_json(const json& j) {
  std::vector<OrientedHyperplane> hs;
  for (const auto& h : array_field(j, "hyperplanes"))
    hs.emplace_back(rational_vector_from_json(field(h, "normal")), rational_from_json(field(h, "offset")));
  return arrangements::HyperplaneArrangement::build(std::move(hs));
}

json certificate_to_json(const selection::PachCertificate& cert) {
  auto stages = json::array();
  for (const auto& s : cert.stages) stages.push_back({{"name", s.name}, {"details", s.details}});
  auto fractions = json::array();
  for (const auto& f : cert.fractions) fractions.push_back(to_string(f));
  json j = {{"input_hash", cert.input_hash},
            {"dim", cert.dim},
            {"p", point_to_json(cert.p)},
            {"Y", cert.y},
            {"arrangement", cert.arrangement.hyperplanes().empty() ? json(nullptr) : arrangement_to_json(cert.arrangement)},
            {"fractions", std::move(fractions)},
            {"verified", cert.verified ? json(selection::to_string(*cert.verified)) : json(nullptr)},
            {"seed", cert.seed},
            {"stages", std::move(stages)}};
  return j;
}

selection::PachCertificate certificate_from_json(const json& j) {
  selection::PachCertificate cert;
  try {
    cert.input_hash = j.value("input_hash", std::string{});
    cert.dim = size_field(j, "dim");
    cert.p = point_from_json(field(j, "p"));
    cert.y = field(j, "Y").get<std::vector<IndexSet>>();
    if (!field(j, "arrangement").is_null()) cert.arrangement = arrangement_from_json(j.at("arrangement"));
    for (const auto& f : array_field(j, "fractions")) cert.fractions.push_back(rational_from_json(f));
    const json& v = field(j, "verified");
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "exhaustive") cert.verified = selection::VerificationMode::Exhaustive;
      else if (s == "arrangement") cert.verified = selection::VerificationMode::Arrangement;
      else throw ParseError("unknown verification mode \"" + s + "\"");
    }
    cert.seed = field(j, "seed").get<std::uint64_t>();
    for (const auto& s : array_field(j, "stages"))
      cert.stages.push_back({field(s, "name").get<std::string>(), field(s, "details")});
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
  return cert;
}

json verification_to_json(const selection::VerificationReport& r) {
  return {{"mode", selection::to_string(r.mode)},
          {"passed", r.passed},
          {"contained", r.contained},
          {"total", r.total},
          {"fraction", to_string(r.fraction)},
          {"witness", r.witness ? json(*r.witness) : json(nullptr)},
          {"warnings", r.warnings},
          {"message", r.message}};
}

json measure_to_json(const constructions::WeightedPointMeasure& m) {
  auto colors = json::array();
  for (const auto& col : m.colors) {
    auto c = json::array();
    for (const auto& a : col) c.push_back({{"point", point_to_json(a.point)}, {"weight", to_string(a.weight)}});
    colors.push_back(std::move(c));
  }
  return {{"dim", m.dim}, {"colors", std::move(colors)}};
}

constructions::WeightedPointMeasure measure_from_json(const json& j) {
  constructions::WeightedPointMeasure m;
  m.dim = size_field(j, "dim");
  for (const auto& col : array_field(j, "colors")) {
    if (!col.is_array()) throw ParseError("each measure color must be an array");
    auto& out = m.colors.emplace_back();
    for (const auto& a : col) out.push_back({point_from_json(field(a, "point")), rational_from_json(field(a, "weight"))});
  }
  return m;
}

std::string canonical_hash(const json& j) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump(j);
}

}  // namespace pachsel::io
