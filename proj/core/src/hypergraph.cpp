#include "pachsel/hypergraph.hpp"

#include "pachsel/errors.hpp"

namespace pachsel::selection {

RainbowHypergraph::RainbowHypergraph(const LabeledPointSet& set, Point anchor, geometry::SimplexMode mode,
                                     std::uint64_t budget)
    : anchor_(std::move(anchor)) {
  if (anchor_.dim() != set.dim()) throw DimensionMismatch("hypergraph anchor dimension");
  for (std::size_t i = 0; i < set.num_colors(); ++i) sizes_.push_back(set.size(i));
  const std::size_t count = rainbow_count(sizes_);
  if (count > budget)
    throw BudgetError("rainbow hypergraph: " + std::to_string(count) + " simplices exceed budget " +
                      std::to_string(budget));
  strides_.assign(sizes_.size(), 1);
  for (std::size_t i = sizes_.size() - 1; i-- > 0;) strides_[i] = strides_[i + 1] * sizes_[i + 1];
  edges_.assign(count, 0);
  std::vector<IndexSet> all;
  for (std::size_t s : sizes_) all.push_back(iota_set(s));
  std::vector<const Point*> verts(sizes_.size());
  for_each_tuple(all, [&](std::span<const std::size_t> idx) {
    for (std::size_t c = 0; c < idx.size(); ++c) verts[c] = &set.color(c)[idx[c]];
    if (geometry::point_in_simplex(anchor_, verts, mode)) {
      edges_[flat(idx)] = 1;
      ++total_edges_;
    }
  });
}

std::size_t RainbowHypergraph::flat(std::span<const std::size_t> indices) const {
  std::size_t f = 0;
  for (std::size_t i = 0; i < indices.size(); ++i) f += indices[i] * strides_[i];
  return f;
}

bool RainbowHypergraph::edge(std::span<const std::size_t> indices) const {
  if (indices.size() != sizes_.size()) throw DimensionMismatch("hypergraph edge query arity");
  for (std::size_t i = 0; i < indices.size(); ++i)
    if (indices[i] >= sizes_[i]) throw PreconditionError("hypergraph edge query index out of range");
  return edges_[flat(indices)] != 0;
}

std::uint64_t RainbowHypergraph::edge_count(const std::vector<IndexSet>& parts) const {
  if (parts.size() != sizes_.size()) throw DimensionMismatch("hypergraph: need one index set per part");
  std::uint64_t count = 0;
  for_each_tuple(parts, [&](std::span<const std::size_t> idx) { count += edges_[flat(idx)]; });
  return count;
}

double RainbowHypergraph::density(const std::vector<IndexSet>& parts) const {
  double total = 1;
  for (const auto& p : parts) total *= static_cast<double>(p.size());
  if (total == 0) return 0;
  return static_cast<double>(edge_count(parts)) / total;
}

double RainbowHypergraph::density() const {
  return edges_.empty() ? 0.0 : static_cast<double>(total_edges_) / static_cast<double>(edges_.size());
}

std::uint64_t RainbowHypergraph::degree(const std::vector<IndexSet>& parts, std::size_t part,
                                        std::size_t index) const {
  auto fixed = parts;
  fixed.at(part) = {index};
  return edge_count(fixed);
}

}  // namespace pachsel::selection
