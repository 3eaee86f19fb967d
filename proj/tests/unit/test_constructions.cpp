#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "oracles.hpp"
#include "pachsel/audits.hpp"
#include "pachsel/condition_g.hpp"
#include "pachsel/constructions.hpp"
#include "pachsel/bounds.hpp"
#include "pachsel/cones.hpp"
#include "pachsel/errors.hpp"
#include "pachsel/predicates.hpp"

using namespace pachsel;
using namespace pachsel::constructions;

namespace {

// Cubes [k eps, (k+1) eps]^d meeting the open unit ball, by brute force over
// the nearest point of each cube to the origin.
std::size_t count_cubes(std::size_t d, const Rational& eps) {
  const long m = static_cast<long>(std::ceil(1 / to_double(eps))) + 1;
  std::vector<long> k(d, -m);
  std::size_t count = 0;
  for (;;) {
    Rational r2 = 0;
    for (long ki : k) {
      const Rational lo = eps * ki, hi = eps * (ki + 1);
      Rational c = 0;
      if (lo > 0) c = lo;
      else if (hi < 0) c = hi;
      r2 += c * c;
    }
    if (r2 < 1) ++count;
    std::size_t j = 0;
    while (j < d && ++k[j] > m) k[j++] = -m;
    if (j == d) break;
  }
  return count;
}

bool strictly_inside_ball(const Point& q) { return squared_norm(q.coords()) < 1; }

}  // namespace

TEST(GridBall, OneDimensionalHalf) {
  GridBallConfig cfg;
  cfg.dim = 1;
  cfg.cube_side = Rational(1, 2);
  const auto r = generate_grid_ball(cfg);
  EXPECT_EQ(r.cubes, 4u);
  EXPECT_EQ(r.set.size(0), 4u);
  EXPECT_EQ(r.set.size(1), 4u);
  EXPECT_EQ(r.condition_g, geometry::Verdict::Holds);
  for (std::size_t c = 0; c < 2; ++c) {
    std::vector<int> hits(4, 0);
    for (const auto& q : r.set.color(c)) {
      ASSERT_TRUE(strictly_inside_ball(q));
      const double x = to_double(q[0]);
      ++hits[static_cast<std::size_t>(std::floor(x * 2) + 2)];
    }
    EXPECT_EQ(hits, std::vector<int>(4, 1));
  }
}

TEST(GridBall, TwoDimensionalCountAndSandwich) {
  GridBallConfig cfg;
  cfg.dim = 2;
  cfg.cube_side = Rational(2, 5);
  cfg.seed = 7;
  cfg.condition_g_cap = 50'000'000;
  const auto r = generate_grid_ball(cfg);
  EXPECT_EQ(r.cubes, count_cubes(2, Rational(2, 5)));
  EXPECT_GE(r.cubes, 19u);
  EXPECT_LE(r.cubes, 32u);
  const double beta = std::numbers::pi;
  EXPECT_NEAR(r.lower, beta / 0.16, 1e-12);
  EXPECT_NEAR(r.upper, std::pow(1 + 0.4 * std::sqrt(2.0), 2) * beta / 0.16, 1e-9);
  const double n = static_cast<double>(r.cubes), slack = static_cast<double>(r.boundary_cubes);
  EXPECT_GE(n + slack, r.lower);
  EXPECT_LE(n - slack, r.upper);
  EXPECT_EQ(r.condition_g, geometry::Verdict::Holds);
}

TEST(GridBallProperty, OnePointPerCubeAndColor) {
  for (std::size_t d = 1; d <= 3; ++d)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      GridBallConfig cfg;
      cfg.dim = d;
      cfg.cube_side = d == 1 ? Rational(1, 3) : Rational(1, static_cast<long>(4 - d));
      cfg.seed = seed;
      const auto r = generate_grid_ball(cfg);
      ASSERT_EQ(r.cubes, count_cubes(d, cfg.cube_side));
      for (std::size_t c = 0; c <= d; ++c) {
        ASSERT_EQ(r.set.size(c), r.cubes);
        std::set<std::vector<long>> cells;
        for (const auto& q : r.set.color(c)) {
          ASSERT_TRUE(strictly_inside_ball(q));
          std::vector<long> cell;
          for (std::size_t j = 0; j < d; ++j) {
            const Rational t = q[j] / cfg.cube_side;
            mpz_class f;
            mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
            ASSERT_NE(Rational(f), t);  // strictly inside the cube
            cell.push_back(f.get_si());
          }
          cells.insert(cell);
        }
        ASSERT_EQ(cells.size(), r.cubes);
      }
      // Three-dimensional plane triples exceed the default enumeration cap.
      if (d < 3) ASSERT_EQ(r.condition_g, geometry::Verdict::Holds) << "d=" << d << " seed " << seed;
      else ASSERT_NE(r.condition_g, geometry::Verdict::Fails);
      ASSERT_TRUE(geometry::in_general_position(r.set));
    }
}

TEST(GridBall, DeterministicForSeed) {
  GridBallConfig cfg;
  cfg.dim = 2;
  cfg.cube_side = Rational(1, 2);
  cfg.seed = 11;
  const auto a = generate_grid_ball(cfg), b = generate_grid_ball(cfg);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(a.set.color(c), b.set.color(c));
}

TEST(Generators, UniformBallAndGaussian) {
  const auto u = uniform_ball(3, 12, 4);
  EXPECT_EQ(u.num_colors(), 4u);
  for (std::size_t c = 0; c < 4; ++c) {
    EXPECT_EQ(u.size(c), 12u);
    for (const auto& q : u.color(c)) EXPECT_TRUE(strictly_inside_ball(q));
  }
  const auto g = gaussian(2, 9, 4);
  EXPECT_EQ(g.size(2), 9u);
  EXPECT_EQ(uniform_ball(3, 12, 4).color(1), u.color(1));
}

TEST(Discretize, SingleAtomOfWeightOne) {
  WeightedPointMeasure m;
  m.dim = 2;
  m.colors = {{{Point{0, 0}, Rational(1)}},
              {{Point{1, 0}, Rational(1, 3)}, {Point{0, 1}, Rational(2, 3)}},
              {{Point{1, 1}, Rational(1)}}};
  EXPECT_EQ(m.common_denominator(), 3);
  const Rational spread(1, 100);
  const auto set = discretize_measure(m, spread, 1);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(set.size(c), 3u);
  for (const auto& q : set.color(0)) EXPECT_LT(squared_norm(q.coords()), spread * spread);
  EXPECT_TRUE(geometry::in_general_position(set));
}

TEST(Discretize, SharedSupportGivesDisjointGenericColors) {
  WeightedPointMeasure m;
  m.dim = 1;
  m.colors = {{{Point{0}, Rational(1, 2)}, {Point{1}, Rational(1, 2)}}, {{Point{0}, Rational(1)}}};
  const Rational spread(1, 10);
  const auto set = discretize_measure(m, spread, 2);
  EXPECT_EQ(set.size(0), 2u);
  EXPECT_EQ(set.size(1), 2u);
  EXPECT_TRUE(geometry::in_general_position(set));
  for (const auto& q : set.color(1)) EXPECT_LT(q[0] * q[0], spread * spread);
  EXPECT_LT(set.color(0)[0][0] * set.color(0)[0][0], spread * spread);
  EXPECT_LT((set.color(0)[1][0] - 1) * (set.color(0)[1][0] - 1), spread * spread);
}

TEST(Discretize, InvalidWeightsAreRejected) {
  WeightedPointMeasure m;
  m.dim = 1;
  m.colors = {{{Point{0}, Rational(1, 2)}}, {{Point{1}, Rational(1)}}};
  EXPECT_THROW(m.validate(), PreconditionError);
  EXPECT_THROW(discretize_measure(m, Rational(1, 10), 0), PreconditionError);
  m.colors[0][0].weight = Rational(-1);
  EXPECT_THROW(m.validate(), PreconditionError);
}

TEST(DiscretizeProperty, CountsAndDisplacement) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    WeightedPointMeasure m;
    m.dim = d;
    const long s = 2 + trial % 4;
    for (std::size_t c = 0; c <= d; ++c) {
      auto& col = m.colors.emplace_back();
      long left = s;
      while (left > 0) {
        const long r = std::min(left, 1 + static_cast<long>(rng() % 2));
        col.push_back({oracle::random_point(rng, d), Rational(r, s)});
        left -= r;
      }
    }
    const Rational spread(1, 50);
    const auto set = discretize_measure(m, spread, static_cast<std::uint64_t>(trial));
    const mpz_class den = m.common_denominator();
    ASSERT_TRUE(geometry::in_general_position(set));
    for (std::size_t c = 0; c <= d; ++c) {
      ASSERT_EQ(set.size(c), den.get_ui());
      std::size_t k = 0;
      for (const auto& a : m.colors[c]) {
        Rational rq = a.weight * den;
        rq.canonicalize();
        for (long j = 0; j < rq.get_num().get_si(); ++j, ++k)
          ASSERT_LT(squared_norm((set.color(c)[k] - a.point).coords()), spread * spread);
      }
    }
  }
}

TEST(CornerVolumeAudit, OneDimensionalIsVacuous) {
  const LabeledPointSet set(1, {{Point{Rational(1, 2)}, Point{Rational(3, 4)}},
                                {Point{Rational(-1, 2)}, Point{Rational(-3, 4)}}});
  const selection::GenericPachConfiguration cfg{{{0, 1}, {0, 1}}, Point{Rational(1, 10)}};
  const auto r = corner_volume_audit(set, cfg, 100'000, 1);
  ASSERT_EQ(r.volumes.size(), 2u);
  EXPECT_NEAR(r.msa.value, 0.5, 4 * r.msa.std_error);
  EXPECT_NEAR(r.bound, 4 * r.msa.value, 1e-12);
  EXPECT_TRUE(r.passed);
  double total = 0;
  for (const auto& v : r.volumes) {
    EXPECT_GT(v.mean, 0);
    total += v.mean;
  }
  EXPECT_LT(total, 2.0);
}

TEST(CornerVolumeAudit, PointOutsideBallIsRejected) {
  const LabeledPointSet set(1, {{Point{2}}, {Point{Rational(-1, 2)}}});
  const selection::GenericPachConfiguration cfg{{{0}, {0}}, Point{0}};
  EXPECT_THROW(corner_volume_audit(set, cfg, 1000, 1), PreconditionError);
}

TEST(CornerVolumeAudit, TwoDimensionalPipelineOutputs) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto r = upper_bound_witness(2, Rational(1, 2), seed, {.seed = seed}, 200'000);
    EXPECT_TRUE(r.audit.passed) << "seed " << seed;
    EXPECT_EQ(r.audit.volumes.size(), 3u);
    EXPECT_LE(r.audit.min_volume, r.audit.bound + 3 * r.audit.sigma);
  }
}

TEST(CornerVolumeAudit, ScaledTowardBoundary) {
  // A small central triangle with the colors pushed to radius 0.99.
  std::vector<std::vector<Point>> colors(3);
  for (std::size_t i = 0; i < 3; ++i) {
    const double t = 2 * std::numbers::pi * static_cast<double>(i) / 3;
    for (double dt : {-0.2, 0.0, 0.2})
      colors[i].push_back(Point::from_doubles(std::vector<double>{0.99 * std::cos(t + dt), 0.99 * std::sin(t + dt)}));
  }
  const LabeledPointSet set(2, std::move(colors));
  const selection::GenericPachConfiguration cfg{{{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, Point{Rational(1, 97), Rational(1, 89)}};
  const auto r = corner_volume_audit(set, cfg, 200'000, 5);
  EXPECT_TRUE(r.passed);
}

TEST(UpperBoundWitness, ReportFields) {
  const auto r = upper_bound_witness(2, Rational(1, 2), 1, {.seed = 1}, 100'000);
  EXPECT_EQ(r.dim, 2u);
  EXPECT_EQ(r.cube_side, Rational(1, 2));
  EXPECT_EQ(r.n, 16u);
  ASSERT_EQ(r.fractions.size(), 3u);
  double mn = 1;
  for (double f : r.fractions) mn = std::min(mn, f);
  EXPECT_DOUBLE_EQ(r.min_fraction, mn);
  EXPECT_NEAR(r.g, 4 * cones::msa_upper_bound(2), 1e-12);
  EXPECT_GT(r.g, 1.0);  // vacuous as a fraction bound
  EXPECT_FALSE(r.g_clamped);
  EXPECT_NEAR(r.volume_ratio, r.audit.volumes[r.audit.min_index].mean / std::numbers::pi, 1e-12);
  EXPECT_EQ(r.count_within_volume, r.fractions[r.audit.min_index] <= r.volume_ratio + 3 * r.volume_ratio_sigma);
}

TEST(UpperBoundWitness, ThreeDimensionalAuditPasses) {
  const auto r = upper_bound_witness(3, Rational(1), 1, {.seed = 1}, 200'000);
  EXPECT_EQ(r.n, 8u);
  EXPECT_TRUE(r.audit.passed);
  EXPECT_EQ(r.audit.volumes.size(), 4u);
  EXPECT_FALSE(r.g_clamped);
  // A single selected point is worth 1/n, far above the corner volume share
  // at this resolution, so the count-versus-volume check is only reported.
  EXPECT_GE(r.min_fraction, 1.0 / 8.0);
}
