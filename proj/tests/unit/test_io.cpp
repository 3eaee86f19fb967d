#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "pachsel/errors.hpp"
#include "pachsel/io.hpp"
#include "pachsel/pipeline.hpp"

using namespace pachsel;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pachsel_io_" + name);
}

}  // namespace

TEST(Io, PointUsesNumbersWhenExact) {
  const Point p{Rational(1, 2), Rational(-3)};
  EXPECT_EQ(io::point_to_json(p), json::parse("[0.5, -3.0]"));
  const Point q{Rational(1, 3), Rational(0)};
  EXPECT_EQ(io::point_to_json(q), json::parse(R"(["1/3", "0"])"));
  EXPECT_EQ(io::point_from_json(io::point_to_json(q)), q);
  EXPECT_EQ(io::point_from_json(json::parse(R"(["2/4", 1])")), (Point{Rational(1, 2), Rational(1)}));
}

TEST(IoProperty, PointSetRoundTrip) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    std::vector<std::vector<Point>> colors(d + 1);
    for (auto& c : colors)
      for (int k = 0; k < 4; ++k) c.push_back(oracle::random_point(rng, d));
    const LabeledPointSet set(d, colors);
    const auto back = io::point_set_from_json(io::point_set_to_json(set));
    ASSERT_EQ(back.dim(), d);
    ASSERT_EQ(back.exact(), set.exact());
    for (std::size_t i = 0; i <= d; ++i) ASSERT_EQ(back.color(i), set.color(i));
    ASSERT_EQ(io::canonical_hash(io::point_set_to_json(back)), io::canonical_hash(io::point_set_to_json(set)));
  }
}

TEST(Io, ArrangementRoundTrip) {
  std::mt19937_64 rng(2);
  const auto arr = gen::arrangement_of(gen::random_simplex(rng, 3));
  const auto back = io::arrangement_from_json(io::arrangement_to_json(arr));
  ASSERT_EQ(back.hyperplanes().size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(back.hyperplane(i).normal(), arr.hyperplane(i).normal());
    EXPECT_EQ(back.hyperplane(i).offset(), arr.hyperplane(i).offset());
    EXPECT_EQ(back.vertex(i), arr.vertex(i));
  }
}

TEST(Io, CertificateRoundTrip) {
  std::mt19937_64 rng(3);
  std::vector<std::vector<Point>> colors(3);
  for (auto& c : colors)
    for (int k = 0; k < 5; ++k) c.push_back(oracle::random_point(rng, 2));
  const LabeledPointSet set(2, colors);
  selection::PipelineParams params;
  params.seed = 4;
  params.input_hash = io::canonical_hash(io::point_set_to_json(set));
  const auto cert = selection::run_pipeline(set, params);
  const json j = io::certificate_to_json(cert);
  const auto back = io::certificate_from_json(j);
  EXPECT_EQ(back.input_hash, params.input_hash);
  EXPECT_EQ(back.dim, 2u);
  EXPECT_EQ(back.p, cert.p);
  EXPECT_EQ(back.y, cert.y);
  EXPECT_EQ(back.fractions, cert.fractions);
  EXPECT_EQ(back.verified, cert.verified);
  EXPECT_EQ(back.seed, 4u);
  ASSERT_EQ(back.stages.size(), cert.stages.size());
  for (std::size_t i = 0; i < cert.stages.size(); ++i) EXPECT_EQ(back.stages[i].name, cert.stages[i].name);
  EXPECT_EQ(io::dump(io::certificate_to_json(back)), io::dump(j));
  EXPECT_TRUE(selection::verify_certificate(set, back, selection::VerificationMode::Exhaustive).passed);
}

TEST(Io, MeasureRoundTrip) {
  constructions::WeightedPointMeasure m;
  m.dim = 1;
  m.colors = {{{Point{0}, Rational(1, 3)}, {Point{Rational(1, 7)}, Rational(2, 3)}}, {{Point{2}, Rational(1)}}};
  const json j = io::measure_to_json(m);
  EXPECT_EQ(j["colors"][0][0]["weight"], "1/3");
  const auto back = io::measure_from_json(j);
  ASSERT_EQ(back.colors.size(), 2u);
  EXPECT_EQ(back.colors[0][1].point, m.colors[0][1].point);
  EXPECT_EQ(back.colors[0][1].weight, Rational(2, 3));
  EXPECT_EQ(back.common_denominator(), 3);
}

TEST(Io, CanonicalHashIgnoresKeyOrder) {
  const json a = json::parse(R"({"b": 1, "a": [1, 2]})");
  const json b = json::parse(R"({"a": [1, 2], "b": 1})");
  EXPECT_EQ(io::canonical_hash(a), io::canonical_hash(b));
  EXPECT_NE(io::canonical_hash(a), io::canonical_hash(json::parse(R"({"a": [2, 1], "b": 1})")));
  EXPECT_EQ(io::canonical_hash(a).size(), 16u);
  // FNV-1a of an empty object "{}".
  EXPECT_EQ(io::canonical_hash(json::object()), "08f44b07b5901a25");
}

TEST(Io, FileRoundTripAndErrors) {
  const auto path = temp_file("roundtrip.json");
  const json j = json::parse(R"({"dim": 1, "exact": true, "colors": [[[0.5]], [[-1]]]})");
  io::write_json_file(path, j);
  EXPECT_EQ(io::read_json_file(path), j);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(text.back(), '\n');
  EXPECT_THROW(io::read_json_file(temp_file("missing.json")), ParseError);
  const auto bad = temp_file("bad.json");
  std::ofstream(bad) << "{ not json";
  EXPECT_THROW(io::read_json_file(bad), ParseError);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST(Io, MalformedDocumentsAreParseErrors) {
  EXPECT_THROW(io::point_from_json(json::parse(R"(["1/0"])")), ParseError);
  EXPECT_THROW(io::point_from_json(json::parse(R"(["abc"])")), ParseError);
  EXPECT_THROW(io::point_set_from_json(json::parse(R"({"dim": 1})")), ParseError);
  EXPECT_THROW(io::point_set_from_json(json::parse(R"({"dim": 1, "colors": [[[0, 1]], [[1]]]})")), Error);
  EXPECT_THROW(io::certificate_from_json(json::parse(R"({"dim": "two"})")), ParseError);
  EXPECT_THROW(io::measure_from_json(json::parse(R"({"dim": 1, "colors": [[{"point": [0]}]]})")), ParseError);
}
