#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pachsel/point.hpp"

namespace pachsel {

// Stable identifier of a point inside a LabeledPointSet.
struct PointRef {
  std::size_t color = 0;
  std::size_t index = 0;
  friend bool operator==(const PointRef&, const PointRef&) = default;
  friend auto operator<=>(const PointRef&, const PointRef&) = default;
};

// Sorted, duplicate-free indices into one color class.
using IndexSet = std::vector<std::size_t>;

// d+1 colored point lists in R^d. Indices are stable; subsets elsewhere in the
// library are index sets into these lists.
class LabeledPointSet {
 public:
  LabeledPointSet() = default;
  // Throws DimensionMismatch unless there are exactly dim+1 colors and every
  // point has dim coordinates. `exact` only records how the set is serialized.
  LabeledPointSet(std::size_t dim, std::vector<std::vector<Point>> colors, bool exact = true);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t num_colors() const noexcept { return colors_.size(); }
  bool exact() const noexcept { return exact_; }

  const std::vector<Point>& color(std::size_t i) const { return colors_.at(i); }
  std::size_t size(std::size_t i) const { return colors_.at(i).size(); }
  std::size_t total_size() const noexcept;
  const Point& at(PointRef ref) const { return colors_.at(ref.color).at(ref.index); }

  // True when every color has the same number of points.
  bool equal_sizes() const noexcept;

  // All points, color-major.
  std::vector<const Point*> all_points() const;
  std::vector<PointRef> all_refs() const;

  // The sub-configuration selected by one index set per color.
  LabeledPointSet restrict(const std::vector<IndexSet>& parts) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<Point>> colors_;
  bool exact_ = true;
};

// Full index set {0, ..., n-1}.
IndexSet iota_set(std::size_t n);

// Product of the sizes (number of rainbow simplices), saturating at SIZE_MAX.
std::size_t rainbow_count(const std::vector<std::size_t>& sizes);

}  // namespace pachsel
