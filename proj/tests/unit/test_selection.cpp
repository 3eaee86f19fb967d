#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "pachsel/constructions.hpp"
#include "pachsel/deep_point.hpp"
#include "pachsel/errors.hpp"
#include "pachsel/few_separations.hpp"
#include "pachsel/generic_config.hpp"
#include "pachsel/ham_sandwich.hpp"
#include "pachsel/hypergraph.hpp"
#include "pachsel/perturb.hpp"
#include "pachsel/pipeline.hpp"
#include "pachsel/predicates.hpp"
#include "pachsel/regularity.hpp"

using namespace pachsel;
using namespace pachsel::selection;

namespace {

LabeledPointSet line_set(std::vector<std::vector<Rational>> colors) {
  std::vector<std::vector<Point>> pts;
  for (const auto& c : colors) {
    auto& out = pts.emplace_back();
    for (const auto& x : c) out.push_back(Point{x});
  }
  return LabeledPointSet(1, std::move(pts));
}

// n random rational points per color, in general position.
LabeledPointSet random_set(std::mt19937_64& rng, std::size_t d, std::size_t n) {
  for (;;) {
    std::vector<std::vector<Point>> colors(d + 1);
    for (auto& c : colors)
      for (std::size_t k = 0; k < n; ++k) c.push_back(oracle::random_point(rng, d));
    LabeledPointSet set(d, std::move(colors));
    if (geometry::in_general_position(set)) return set;
  }
}

std::vector<IndexSet> full_parts(const LabeledPointSet& set) {
  std::vector<IndexSet> parts;
  for (std::size_t i = 0; i < set.num_colors(); ++i) parts.push_back(iota_set(set.size(i)));
  return parts;
}

// Each color centrally symmetric about the origin, rotated generically.
LabeledPointSet symmetric_set(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<Point>> colors(3);
  for (auto& c : colors) {
    while (c.size() < n) {
      const Point q = oracle::random_point(rng, 2, -8, 8);
      c.push_back(q);
      c.push_back(Rational(-1) * q);
    }
  }
  return LabeledPointSet(2, std::move(colors));
}

std::size_t open_side_count(const OrientedHyperplane& h, const std::vector<const Point*>& s, int side) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](const Point* q) { return h.side(*q) == side; }));
}

}  // namespace

TEST(RainbowDepth, HandEnumeratedSegments) {
  const auto set = line_set({{0, 3}, {1, 2}});
  EXPECT_EQ(rainbow_depth(set, Point{Rational(3, 2)}), 2u);
  DeepPointOptions opts;
  opts.extra_candidates = {Point{Rational(3, 2)}};
  const auto r = deep_rainbow_point(set, opts);
  EXPECT_EQ(r.total, 4u);
  EXPECT_GE(r.depth, 2u);
}

TEST(RainbowDepth, SinglePointPerColor) {
  const LabeledPointSet set(2, {{Point{0, 0}}, {Point{1, 0}}, {Point{0, 1}}});
  const auto r = deep_rainbow_point(set);
  EXPECT_EQ(r.total, 1u);
  EXPECT_LE(r.depth, 1u);
  EXPECT_EQ(rainbow_depth(set, Point{5, 5}), 0u);
}

TEST(RainbowDepth, BudgetIsEnforced) {
  std::mt19937_64 rng(1);
  const auto set = random_set(rng, 2, 5);
  DeepPointOptions opts;
  opts.budget = 100;
  EXPECT_THROW(deep_rainbow_point(set, opts), BudgetError);
}

TEST(RainbowDepthProperty, MatchesShuffledOracleRecount) {
  std::mt19937_64 rng(2);
  for (std::size_t d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 5; ++trial) {
      const auto set = random_set(rng, d, d == 3 ? 3 : 5);
      const auto r = deep_rainbow_point(set);
      auto parts = full_parts(set);
      for (auto& p : parts) std::shuffle(p.begin(), p.end(), rng);
      ASSERT_EQ(r.depth, oracle::rainbow_containment(set, parts, r.p));
      ASSERT_EQ(r.total, oracle::product_of_sizes(parts));
    }
}

TEST(RainbowDepth, SymmetricConfigurationIsDeep) {
  std::mt19937_64 rng(3);
  const auto set = symmetric_set(rng, 10);
  const auto r = deep_rainbow_point(set);
  EXPECT_GE(static_cast<double>(r.depth) / static_cast<double>(r.total), 0.15);
}

TEST(PerturbAnchor, GenericPointIsKept) {
  const LabeledPointSet set(2, {{Point{0, 0}}, {Point{4, 0}}, {Point{0, 4}}});
  const Point p{1, 1};
  const auto r = perturb_anchor(p, set);
  EXPECT_FALSE(r.moved);
  EXPECT_EQ(r.p, p);
}

TEST(PerturbAnchor, PointOnSpannedLineMovesInsideMargin) {
  // p = (1, 1) lies on the line through (0,0) and (2,2) of different colors.
  const LabeledPointSet set(2, {{Point{0, 0}, Point{-1, 5}}, {Point{4, 0}, Point{2, 2}}, {Point{0, 4}, Point{5, 7}}});
  const Point p{1, 1};
  ASSERT_FALSE(geometry::extends_general_position(set.all_points(), p, 2));
  const auto r = perturb_anchor(p, set, {.seed = 3});
  EXPECT_TRUE(r.moved);
  EXPECT_TRUE(geometry::extends_general_position(set.all_points(), r.p, 2));
  const auto d2 = squared_norm((r.p - p).coords());
  EXPECT_LT(d2 * 4, r.squared_margin);
  EXPECT_EQ(rainbow_depth(set, r.p, geometry::SimplexMode::Open), rainbow_depth(set, p, geometry::SimplexMode::Open));
}

TEST(PerturbAnchor, PointOnFacetHasNoMargin) {
  const LabeledPointSet set(2, {{Point{0, 0}}, {Point{4, 0}}, {Point{0, 4}}});
  EXPECT_THROW(perturb_anchor(Point{2, 0}, set), PreconditionError);
}

TEST(Hypergraph, CountsMatchOracle) {
  std::mt19937_64 rng(4);
  const auto set = random_set(rng, 2, 6);
  const Point p{0, 0};
  const RainbowHypergraph h(set, p);
  const auto parts = full_parts(set);
  EXPECT_EQ(h.edge_count(), oracle::rainbow_containment(set, parts, p));
  const std::vector<IndexSet> sub{{0, 2}, {1, 3, 5}, {4}};
  EXPECT_EQ(h.edge_count(sub), oracle::rainbow_containment(set, sub, p));
  EXPECT_DOUBLE_EQ(h.density(sub), static_cast<double>(h.edge_count(sub)) / 6.0);
  std::uint64_t deg = 0;
  for (std::size_t a : parts[1])
    for (std::size_t b : parts[2]) {
      const std::size_t idx[3] = {2, a, b};
      deg += h.edge(idx);
    }
  EXPECT_EQ(h.degree(parts, 0, 2), deg);
}

TEST(Regularity, CompleteHypergraphNeedsNoStep) {
  // Every segment between a negative and a positive point contains 0.
  const auto set = line_set({{-4, -3, -2, -1}, {1, 2, 3, 4}});
  const RainbowHypergraph h(set, Point{0});
  RegularityParams params;
  params.epsilon = 0.5;
  params.beta = 1;
  const auto r = weak_regularity(h, params);
  EXPECT_EQ(r.s, 4u);
  EXPECT_EQ(r.parts, full_parts(set));
  EXPECT_TRUE(r.steps.empty());
  EXPECT_EQ(r.witness_report(), "exhaustive-clean");
  EXPECT_DOUBLE_EQ(r.density, 1.0);
}

TEST(Regularity, TwoBlockIncidenceRestrictsToADenseBlock) {
  // Edges are exactly X1[0..1] x X2[2..3] and X1[2..3] x X2[0..1].
  const auto set = line_set({{-2, -1, 3, 4}, {-4, -3, 1, 2}});
  const RainbowHypergraph h(set, Point{0});
  ASSERT_DOUBLE_EQ(h.density(), 0.5);
  RegularityParams params;
  params.epsilon = 0.5;
  params.beta = 0.5;
  const auto r = weak_regularity(h, params);
  EXPECT_EQ(r.s, 2u);
  EXPECT_DOUBLE_EQ(r.density, 1.0);
  EXPECT_TRUE((r.parts == std::vector<IndexSet>{{0, 1}, {2, 3}}) || (r.parts == std::vector<IndexSet>{{2, 3}, {0, 1}}));
  EXPECT_EQ(r.witness_report(), "exhaustive-clean");
}

TEST(Regularity, DensityBelowFloorThrows) {
  const auto set = line_set({{-2, -1, 3, 4}, {-4, -3, 1, 2}});
  const RainbowHypergraph h(set, Point{0});
  RegularityParams params;
  params.beta = 0.75;
  EXPECT_THROW(weak_regularity(h, params), PreconditionError);
}

TEST(RegularityProperty, DensityNeverDropsAndSizeShrinks) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto set = random_set(rng, 2, 8);
    const RainbowHypergraph h(set, centroid(set.all_points()));
    if (h.edge_count() == 0) continue;
    RegularityParams params;
    params.epsilon = 0.25;
    params.beta = h.density();
    params.seed = static_cast<std::uint64_t>(trial);
    const auto r = weak_regularity(h, params);
    double prev = h.density();
    std::size_t prev_s = 8;
    for (const auto& step : r.steps) {
      ASSERT_GE(step.density + 1e-12, prev);
      ASSERT_LT(step.s, prev_s);
      prev = step.density;
      prev_s = step.s;
    }
    ASSERT_GE(r.density, params.beta);
    for (const auto& p : r.parts) ASSERT_EQ(p.size(), r.s);
    // A clean exhaustive report means no edgeless t-subtuple survives.
    if (r.search == WitnessSearch::Exhaustive) {
      const auto w = find_empty_subtuple(h, r.parts, witness_size(params.epsilon, r.s), params, 1);
      ASSERT_FALSE(w.witness.has_value());
    }
  }
}

TEST(HamSandwich, MedianOfThreeOnALine) {
  const std::vector<Point> s{Point{1}, Point{2}, Point{3}};
  const auto h = ham_sandwich_bisect({{&s[0], &s[1], &s[2]}});
  EXPECT_EQ(h.side(Point{2}), 0);
}

TEST(HamSandwich, AlternatingConvexPosition) {
  // Eight points on a convex curve, alternating colors.
  std::vector<Point> a, b;
  for (int k = 0; k < 8; ++k) {
    const Point q{Rational(k), Rational(k * k, 4)};
    (k % 2 ? b : a).push_back(q);
  }
  std::vector<const Point*> pa, pb;
  for (const auto& q : a) pa.push_back(&q);
  for (const auto& q : b) pb.push_back(&q);
  const auto h = ham_sandwich_bisect({pa, pb});
  for (const auto* s : {&pa, &pb}) {
    EXPECT_LE(open_side_count(h, *s, 1), 2u);
    EXPECT_LE(open_side_count(h, *s, -1), 2u);
  }
}

TEST(HamSandwich, ConcentricPentagons) {
  std::vector<Point> a, b;
  for (int k = 0; k < 5; ++k) {
    const double t = 2 * std::numbers::pi * k / 5;
    a.push_back(Point::from_doubles(std::vector<double>{std::cos(t + 0.1), std::sin(t + 0.1)}));
    b.push_back(Point::from_doubles(std::vector<double>{2 * std::cos(t + 0.37), 2 * std::sin(t + 0.37)}));
  }
  std::vector<const Point*> pa, pb;
  for (const auto& q : a) pa.push_back(&q);
  for (const auto& q : b) pb.push_back(&q);
  const auto h = ham_sandwich_bisect({pa, pb});
  for (const auto* s : {&pa, &pb}) {
    EXPECT_LE(open_side_count(h, *s, 1), 2u);
    EXPECT_LE(open_side_count(h, *s, -1), 2u);
  }
}

TEST(HamSandwichProperty, RandomSetsAreBisected) {
  std::mt19937_64 rng(6);
  for (std::size_t d = 1; d <= 3; ++d)
    for (int trial = 0; trial < 10; ++trial) {
      const auto set = random_set(rng, d, d == 3 ? 5 : 7);
      std::vector<std::vector<const Point*>> sets(d);
      for (std::size_t i = 0; i < d; ++i)
        for (const auto& q : set.color(i)) sets[i].push_back(&q);
      const auto h = ham_sandwich_bisect(sets);
      for (const auto& s : sets) {
        ASSERT_LE(open_side_count(h, s, 1), s.size() / 2);
        ASSERT_LE(open_side_count(h, s, -1), s.size() / 2);
      }
    }
}

TEST(FewSeparations, OneDimensionalEight) {
  const auto set = line_set({{-8, -7, -6, -5, 5, 6, 7, 8}, {-4, -3, -2, -1, 1, 2, 3, 4}});
  const Point p{Rational(1, 3)};
  const auto r = few_separations(set, full_parts(set), p);
  for (const auto& y : r.y) EXPECT_GE(y.size(), 4u);
  const auto contained = oracle::rainbow_containment(set, r.y, p);
  if (r.branch == FewSeparationsBranch::AllContain) EXPECT_EQ(contained, oracle::product_of_sizes(r.y));
  else EXPECT_EQ(contained, 0u);
}

TEST(FewSeparationsProperty, SizesRoundsAndBranch) {
  std::mt19937_64 rng(7);
  for (std::size_t d = 1; d <= 2; ++d)
    for (int trial = 0; trial < 15; ++trial) {
      const std::size_t n = 12;
      const auto set = random_set(rng, d, n);
      const Point p = oracle::random_point(rng, d, -2, 2);
      if (!geometry::extends_general_position(set.all_points(), p, d)) continue;
      FewSeparationsOptions opts;
      opts.seed = static_cast<std::uint64_t>(trial);
      const auto r = few_separations(set, full_parts(set), p, opts);
      const std::size_t floor_size = (n + (std::size_t{1} << d) - 1) >> d;
      for (const auto& y : r.y) ASSERT_GE(y.size(), floor_size);
      ASSERT_EQ(r.rounds.size(), d + 1);
      for (std::size_t j = 0; j <= d; ++j)
        for (std::size_t i = 0; i <= d; ++i) {
          const auto before = r.rounds[j].sizes_before[i], after = r.rounds[j].sizes_after[i];
          if (i == j) ASSERT_EQ(after, before);
          else ASSERT_GE(2 * after, before);
        }
      const auto contained = oracle::rainbow_containment(set, r.y, p);
      if (r.branch == FewSeparationsBranch::AllContain) ASSERT_EQ(contained, oracle::product_of_sizes(r.y));
      else ASSERT_EQ(contained, 0u);
    }
}

TEST(Pipeline, OneDimensionalRandom) {
  std::mt19937_64 rng(8);
  const auto set = random_set(rng, 1, 10);
  const auto cert = run_pipeline(set, {.seed = 1});
  for (const auto& y : cert.y) EXPECT_GE(y.size(), 1u);
  EXPECT_EQ(oracle::rainbow_containment(set, cert.y, cert.p), oracle::product_of_sizes(cert.y));
  EXPECT_EQ(cert.verified, VerificationMode::Exhaustive);
  std::vector<std::string> names;
  for (const auto& s : cert.stages) names.push_back(s.name);
  EXPECT_EQ(names.front(), "deep-point");
  EXPECT_NE(std::find(names.begin(), names.end(), "few-separations"), names.end());
}

TEST(Pipeline, GridBallTwoDimensional) {
  constructions::GridBallConfig cfg;
  cfg.dim = 2;
  cfg.cube_side = Rational(1, 2);
  cfg.seed = 2;
  const auto grid = constructions::generate_grid_ball(cfg);
  const auto cert = run_pipeline(grid.set, {.seed = 2});
  EXPECT_EQ(oracle::rainbow_containment(grid.set, cert.y, cert.p), oracle::product_of_sizes(cert.y));
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_EQ(cert.fractions[i], Rational(static_cast<long>(cert.y[i].size()), static_cast<long>(grid.cubes)));
}

TEST(Pipeline, UnequalSizesAreRejectedAtInput) {
  const auto set = line_set({{0, 1}, {2}});
  try {
    run_pipeline(set);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "input");
    EXPECT_EQ(e.kind(), ErrorKind::Precondition);
  }
}

TEST(Pipeline, DeterministicForSeed) {
  std::mt19937_64 rng(9);
  const auto set = random_set(rng, 2, 6);
  const auto a = run_pipeline(set, {.seed = 5});
  const auto b = run_pipeline(set, {.seed = 5});
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.y, b.y);
}

TEST(Certificate, ExhaustiveFractionOneAndMutation) {
  std::mt19937_64 rng(10);
  const auto set = random_set(rng, 2, 6);
  auto cert = run_pipeline(set, {.seed = 3});
  const auto ok = verify_certificate(set, cert, VerificationMode::Exhaustive);
  EXPECT_TRUE(ok.passed);
  EXPECT_EQ(ok.fraction, Rational(1));
  EXPECT_TRUE(verify_certificate(set, cert, VerificationMode::Arrangement).passed);
  // Swap in a point that some rainbow simplex with p cannot contain.
  bool mutated = false;
  for (std::size_t c = 0; c < 3 && !mutated; ++c)
    for (std::size_t k = 0; k < set.size(c) && !mutated; ++k) {
      auto bad = cert;
      bad.y[c] = {k};
      if (oracle::rainbow_containment(set, bad.y, bad.p) < oracle::product_of_sizes(bad.y)) {
        const auto r = verify_certificate(set, bad, VerificationMode::Exhaustive);
        EXPECT_FALSE(r.passed);
        EXPECT_LT(r.fraction, Rational(1));
        ASSERT_TRUE(r.witness.has_value());
        std::vector<Point> verts;
        for (std::size_t i = 0; i < 3; ++i) verts.push_back(set.color(i)[(*r.witness)[i]]);
        EXPECT_FALSE(oracle::hull_contains(bad.p, verts));
        mutated = true;
      }
    }
  EXPECT_TRUE(mutated);
}

TEST(Certificate, EmptyPartIsVacuous) {
  const LabeledPointSet set(1, {{Point{0}}, {Point{1}}});
  PachCertificate cert;
  cert.dim = 1;
  cert.p = Point{Rational(1, 2)};
  cert.y = {{}, {0}};
  const auto r = verify_certificate(set, cert, VerificationMode::Exhaustive);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.fraction, Rational(1));
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Certificate, BadIndexIsReported) {
  const LabeledPointSet set(1, {{Point{0}}, {Point{1}}});
  PachCertificate cert;
  cert.dim = 1;
  cert.p = Point{Rational(1, 2)};
  cert.y = {{3}, {0}};
  const auto r = verify_certificate(set, cert, VerificationMode::Exhaustive);
  EXPECT_FALSE(r.passed);
  EXPECT_FALSE(r.message.empty());
}

TEST(CertificateProperty, ArrangementModeImpliesExhaustive) {
  std::mt19937_64 rng(11);
  for (std::size_t d = 1; d <= 2; ++d)
    for (int trial = 0; trial < 5; ++trial) {
      const auto set = random_set(rng, d, 6);
      PipelineParams params;
      params.seed = static_cast<std::uint64_t>(trial);
      params.verify = false;
      const auto cert = run_pipeline(set, params);
      const auto arr = verify_certificate(set, cert, VerificationMode::Arrangement);
      const auto ex = verify_certificate(set, cert, VerificationMode::Exhaustive);
      if (arr.passed) ASSERT_EQ(ex.fraction, Rational(1));
    }
}

TEST(ShrinkToGeneric, InteriorAnchorRemovesNothing) {
  const LabeledPointSet set(2, {{Point{0, 0}}, {Point{4, 0}}, {Point{0, 4}}});
  const auto r = shrink_to_generic(set, {{0}, {0}, {0}}, Point{1, 1});
  EXPECT_TRUE(r.removed.empty());
  EXPECT_EQ(check_generic_configuration(set, r.config), "");
}

TEST(ShrinkToGeneric, OneDimensionalEndpoint) {
  // p' = 1 is the right endpoint of the segment [0, 1] and inside [-2, 3], [0, 3], [-2, 1].
  const auto set = line_set({{0, -2}, {1, 3}});
  const auto r = shrink_to_generic(set, {{0, 1}, {0, 1}}, Point{1});
  ASSERT_EQ(r.removed.size(), 1u);
  EXPECT_LE(r.removed.size(), 1u);
  EXPECT_EQ(r.config.y[0].size(), 1u);
  EXPECT_EQ(r.config.y[1].size(), 1u);
  EXPECT_EQ(check_generic_configuration(set, r.config), "");
}

TEST(ShrinkToGenericProperty, RemovalsBoundedByDimension) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    constructions::GridBallConfig cfg;
    cfg.dim = 2;
    cfg.cube_side = Rational(2, 3);
    cfg.seed = static_cast<std::uint64_t>(trial);
    const auto grid = constructions::generate_grid_ball(cfg);
    const auto cert = run_pipeline(grid.set, {.seed = static_cast<std::uint64_t>(trial)});
    const auto r = shrink_to_generic(grid.set, cert.y, cert.p);
    ASSERT_LE(r.removed.size(), 2u);
    for (std::size_t i = 0; i < 3; ++i) ASSERT_GE(r.config.y[i].size() + 2, cert.y[i].size());
    ASSERT_EQ(check_generic_configuration(grid.set, r.config), "");
  }
}

TEST(SeparatingArrangement, OneDimensional) {
  const auto set = line_set({{2, 3}, {-3, -1}});
  const GenericPachConfiguration cfg{{{0, 1}, {0, 1}}, Point{Rational(1, 2)}};
  const auto arr = separating_arrangement(set, cfg);
  EXPECT_TRUE(arr.in_central_simplex(Point{Rational(1, 2)}, true));
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_TRUE(arr.in_corner(0, set.color(0)[k], true));
    EXPECT_TRUE(arr.in_corner(1, set.color(1)[k], true));
  }
}

TEST(SeparatingArrangement, HullMembershipIsRejected) {
  // p = 0 is in the hull of Y_1 = {-1, 1}, so no hyperplane cuts it off from Y_0-hat.
  const auto set = line_set({{2}, {-1, 1}});
  const GenericPachConfiguration cfg{{{0}, {0, 1}}, Point{0}};
  EXPECT_THROW(separating_arrangement(set, cfg), PreconditionError);
}

TEST(SeparatingArrangementProperty, PipelineOutputsGiveInsideBranch) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const auto set = random_set(rng, 2, 6);
    const auto cert = run_pipeline(set, {.seed = static_cast<std::uint64_t>(trial)});
    const auto shrunk = shrink_to_generic(set, cert.y, cert.p);
    const auto arr = separating_arrangement(set, shrunk.config);
    std::vector<std::vector<Point>> y(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k : shrunk.config.y[i]) y[i].push_back(set.color(i)[k]);
    ASSERT_EQ(arrangements::separation_dichotomy(shrunk.config.p, arr, y).branch, arrangements::Branch::Inside);
  }
}
