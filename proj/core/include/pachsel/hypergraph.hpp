#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pachsel/point_set.hpp"
#include "pachsel/predicates.hpp"

namespace pachsel::selection {

inline constexpr std::uint64_t kDefaultRainbowBudget = 50'000'000;

// (d+1)-partite hypergraph on the colors of a point set whose edges are the
// rainbow simplices containing a fixed anchor point. The full incidence table
// is computed once; densities of sub-tuples are read from it.
class RainbowHypergraph {
 public:
  // Throws BudgetError when the number of rainbow simplices exceeds budget.
  RainbowHypergraph(const LabeledPointSet& set, Point anchor,
                    geometry::SimplexMode mode = geometry::SimplexMode::Closed,
                    std::uint64_t budget = kDefaultRainbowBudget);

  std::size_t num_parts() const noexcept { return sizes_.size(); }
  const std::vector<std::size_t>& sizes() const noexcept { return sizes_; }
  const Point& anchor() const noexcept { return anchor_; }

  bool edge(std::span<const std::size_t> indices) const;
  std::uint64_t edge_count() const noexcept { return total_edges_; }
  std::uint64_t edge_count(const std::vector<IndexSet>& parts) const;
  // e(parts) / prod |parts_i|; 0 for an empty part.
  double density(const std::vector<IndexSet>& parts) const;
  double density() const;

  // Number of edges through vertex `index` of part `part` inside the
  // sub-tuple `parts` (the vertex itself need not belong to parts[part]).
  std::uint64_t degree(const std::vector<IndexSet>& parts, std::size_t part, std::size_t index) const;

 private:
  std::size_t flat(std::span<const std::size_t> indices) const;

  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> strides_;
  Point anchor_;
  std::vector<std::uint8_t> edges_;
  std::uint64_t total_edges_ = 0;
};

// Calls f(indices) for every index tuple of the product of the parts, in
// lexicographic order.
template <class F>
void for_each_tuple(const std::vector<IndexSet>& parts, F&& f) {
  const std::size_t k = parts.size();
  for (const auto& p : parts)
    if (p.empty()) return;
  std::vector<std::size_t> pos(k, 0), idx(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) idx[i] = parts[i][pos[i]];
    f(std::span<const std::size_t>(idx));
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++pos[i] < parts[i].size()) break;
      pos[i] = 0;
      if (i == 0) return;
    }
  }
}

}  // namespace pachsel::selection
