#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pachsel/condition_g.hpp"
#include "pachsel/point_set.hpp"

namespace pachsel::constructions {

struct GridBallConfig {
  std::size_t dim = 2;
  Rational cube_side{1, 2};
  std::uint64_t seed = 0;
  // Per-coordinate perturbation bound used on retries; defaults to
  // cube_side / 2000, inside (0, cube_side / 1000).
  std::optional<Rational> perturbation;
  std::size_t max_retries = 50;
  std::uint64_t condition_g_cap = geometry::kDefaultConditionGCap;
};

struct GridBallResult {
  LabeledPointSet set;
  std::size_t cubes = 0;        // points per color
  std::size_t boundary_cubes = 0;  // cubes meeting the sphere
  double lower = 0;             // beta_d / eps^d
  double upper = 0;             // (1 + eps sqrt d)^d beta_d / eps^d
  geometry::Verdict condition_g = geometry::Verdict::Indeterminate;
  std::size_t attempts = 0;
};

// Tiles R^d with cubes of side eps and keeps those meeting the open unit
// ball; each kept cube gets one random rational point per color inside both
// the open cube and the open ball. The union is checked for condition (G) and
// re-perturbed on failure. Throws BudgetError when retries run out.
GridBallResult generate_grid_ball(const GridBallConfig& cfg);

// n points per color, uniform in the unit ball / standard Gaussian, rounded to
// doubles and stored exactly.
LabeledPointSet uniform_ball(std::size_t dim, std::size_t n, std::uint64_t seed);
LabeledPointSet gaussian(std::size_t dim, std::size_t n, std::uint64_t seed);

struct WeightedPoint {
  Point point;
  Rational weight;
};

// One finitely supported probability measure per color.
struct WeightedPointMeasure {
  std::size_t dim = 0;
  std::vector<std::vector<WeightedPoint>> colors;

  // Throws PreconditionError unless weights are positive and sum to 1 per
  // color and every point has dimension dim.
  void validate() const;
  // Least common denominator s of all weights.
  mpz_class common_denominator() const;
};

// Replaces each atom of weight r/s by r distinct points at distance < spread
// from it, retrying until the union is in general position. Each color gets
// exactly s points.
LabeledPointSet discretize_measure(const WeightedPointMeasure& measure, const Rational& spread, std::uint64_t seed,
                                   std::size_t max_retries = 50);

}  // namespace pachsel::constructions
