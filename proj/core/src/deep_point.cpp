#include "pachsel/deep_point.hpp"

#include <algorithm>
#include <random>

#include "pachsel/errors.hpp"
#include "pachsel/predicates.hpp"

namespace pachsel::selection {
namespace {

Point coordinate_median(const LabeledPointSet& set) {
  const auto pts = set.all_points();
  RationalVector out(set.dim());
  std::vector<Rational> column;
  for (std::size_t k = 0; k < set.dim(); ++k) {
    column.clear();
    for (const Point* p : pts) column.push_back((*p)[k]);
    std::sort(column.begin(), column.end());
    const std::size_t m = column.size();
    out[k] = m % 2 == 1 ? column[m / 2] : (column[m / 2 - 1] + column[m / 2]) / 2;
  }
  return Point(std::move(out));
}

std::vector<IndexSet> full_parts(const LabeledPointSet& set) {
  std::vector<IndexSet> parts;
  for (std::size_t c = 0; c < set.num_colors(); ++c) parts.push_back(iota_set(set.size(c)));
  return parts;
}

}  // namespace

std::uint64_t rainbow_depth(const LabeledPointSet& set, const Point& p, geometry::SimplexMode mode) {
  if (p.dim() != set.dim()) throw DimensionMismatch("rainbow_depth: point dimension");
  std::uint64_t depth = 0;
  std::vector<const Point*> verts(set.num_colors());
  for_each_tuple(full_parts(set), [&](std::span<const std::size_t> idx) {
    for (std::size_t c = 0; c < idx.size(); ++c) verts[c] = &set.color(c)[idx[c]];
    if (geometry::point_in_simplex(p, verts, mode)) ++depth;
  });
  return depth;
}

DeepPointResult deep_rainbow_point(const LabeledPointSet& set, const DeepPointOptions& options) {
  std::vector<std::size_t> sizes;
  for (std::size_t c = 0; c < set.num_colors(); ++c) {
    if (set.size(c) == 0) throw PreconditionError("deep_rainbow_point: empty color class");
    sizes.push_back(set.size(c));
  }
  const std::uint64_t total = rainbow_count(sizes);
  if (total > options.budget)
    throw BudgetError("deep_rainbow_point: " + std::to_string(total) + " rainbow simplices exceed budget " +
                      std::to_string(options.budget));

  std::vector<std::pair<Point, std::string>> candidates;
  if (options.use_centroid) {
    auto pts = set.all_points();
    candidates.emplace_back(centroid(pts), "centroid");
  }
  if (options.use_median) candidates.emplace_back(coordinate_median(set), "median");
  std::mt19937_64 rng(options.seed);
  std::vector<const Point*> verts(set.num_colors());
  for (std::size_t r = 0; r < options.random_candidates; ++r) {
    for (std::size_t c = 0; c < set.num_colors(); ++c) {
      std::uniform_int_distribution<std::size_t> pick(0, set.size(c) - 1);
      verts[c] = &set.color(c)[pick(rng)];
    }
    candidates.emplace_back(centroid(verts), "random-simplex");
  }
  for (const auto& p : options.extra_candidates) {
    if (p.dim() != set.dim()) throw DimensionMismatch("deep_rainbow_point: candidate dimension");
    candidates.emplace_back(p, "user");
  }
  if (candidates.empty()) throw PreconditionError("deep_rainbow_point: no candidate strategy enabled");

  // One pass over the rainbow simplices, testing every candidate.
  std::vector<std::uint64_t> depth(candidates.size(), 0);
  for_each_tuple(full_parts(set), [&](std::span<const std::size_t> idx) {
    for (std::size_t c = 0; c < idx.size(); ++c) verts[c] = &set.color(c)[idx[c]];
    for (std::size_t k = 0; k < candidates.size(); ++k)
      if (geometry::classify_in_simplex(candidates[k].first, verts).closed) ++depth[k];
  });
  const auto best = static_cast<std::size_t>(std::max_element(depth.begin(), depth.end()) - depth.begin());
  return {candidates[best].first, depth[best], total, candidates[best].second, candidates.size()};
}

}  // namespace pachsel::selection
