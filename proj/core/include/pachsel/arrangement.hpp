#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pachsel/hyperplane.hpp"
#include "pachsel/point.hpp"

namespace pachsel::arrangements {

// C_i = intersection of the positive halfspaces of every hyperplane but H_i;
// a simplicial cone with apex h_i.
struct CornerRegion {
  std::size_t index = 0;
  Point apex;
  std::vector<std::size_t> halfspaces;
};

// d+1 hyperplanes of R^d in general position, each oriented so that the
// bounded cell (the central simplex) lies on its negative side.
class HyperplaneArrangement {
 public:
  // Computes the vertices h_i = intersection of all hyperplanes but H_i and
  // reorients. Throws PreconditionError if some d normals are dependent or all
  // d+1 hyperplanes pass through one point.
  static HyperplaneArrangement build(std::vector<OrientedHyperplane> hyperplanes);

  std::size_t dim() const noexcept { return vertices_.empty() ? 0 : vertices_.front().dim(); }
  const std::vector<OrientedHyperplane>& hyperplanes() const noexcept { return hyperplanes_; }
  const OrientedHyperplane& hyperplane(std::size_t i) const { return hyperplanes_.at(i); }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const Point& vertex(std::size_t i) const { return vertices_.at(i); }
  CornerRegion corner(std::size_t i) const;

  // Closed (or open) membership in the central simplex.
  bool in_central_simplex(const Point& x, bool open = false) const;
  // Closed (or open) membership in the corner region C_i.
  bool in_corner(std::size_t i, const Point& x, bool open = false) const;

 private:
  std::vector<OrientedHyperplane> hyperplanes_;
  std::vector<Point> vertices_;
};

// Builds an arrangement from d+1 hyperplanes, first perturbing them by random
// rational amounts when they are not in general position. Every point listed
// in keep_sides[i] must lie strictly off hyperplane i and keeps its side.
// Throws BudgetError when no perturbation succeeds within max_retries.
HyperplaneArrangement perturb_to_general_position(std::vector<OrientedHyperplane> hyperplanes,
                                                  const std::vector<std::vector<const Point*>>& keep_sides,
                                                  std::uint64_t seed, std::size_t max_retries = 50);

enum class Branch { Inside, Outside };

struct DichotomyResult {
  Branch branch = Branch::Inside;
  // Set for Outside: strictly separates p (negative side) from every Y_i.
  std::optional<OrientedHyperplane> separator;
};

// Either p lies in the central simplex and every Y_i lies in the interior of
// C_i, or a hyperplane strictly separates p from the union of the Y_i.
// Requires p on no H_i and each H_i strictly separating p from the union of
// the Y_j, j != i; violations throw PreconditionError naming (i, j, k).
DichotomyResult separation_dichotomy(const Point& p, const HyperplaneArrangement& arr,
                                     const std::vector<std::vector<Point>>& y);

// With y_i in C_i and p in the central simplex, p lies in conv{y_i}. Returns
// that closed containment test; a false result is written out as a
// counterexample bundle (to $PACHSEL_DUMP_DIR if set, else stderr).
bool corners_cover_simplex(const HyperplaneArrangement& arr, std::span<const Point> corner_points, const Point& p);

}  // namespace pachsel::arrangements
