#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pachsel/hypergraph.hpp"
#include "pachsel/point_set.hpp"

namespace pachsel::selection {

struct DeepPointOptions {
  std::uint64_t budget = kDefaultRainbowBudget;  // max rainbow simplices
  std::uint64_t seed = 0;
  bool use_centroid = true;
  bool use_median = true;
  std::size_t random_candidates = 200;  // centroids of random rainbow simplices
  std::vector<Point> extra_candidates;
};

struct DeepPointResult {
  Point p;
  std::uint64_t depth = 0;  // rainbow simplices containing p (closed)
  std::uint64_t total = 0;  // all rainbow simplices
  std::string strategy;     // "centroid", "median", "random-simplex", "user"
  std::size_t candidates_evaluated = 0;
};

// Number of rainbow simplices containing p.
std::uint64_t rainbow_depth(const LabeledPointSet& set, const Point& p,
                            geometry::SimplexMode mode = geometry::SimplexMode::Closed);

// Best candidate point by exact rainbow depth. Candidates are evaluated in
// the order centroid, coordinate-wise median, random simplex centroids, user
// points; the first one reaching the maximum depth wins. Throws BudgetError
// when the rainbow simplex count exceeds options.budget.
DeepPointResult deep_rainbow_point(const LabeledPointSet& set, const DeepPointOptions& options = {});

}  // namespace pachsel::selection
