#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pachsel/arrangement.hpp"
#include "pachsel/condition_g.hpp"
#include "pachsel/point_set.hpp"

namespace pachsel::selection {

// Disjoint index sets Y_i and a point p such that the union of the Y_i plus p
// is in general position and p is interior to every rainbow simplex.
struct GenericPachConfiguration {
  std::vector<IndexSet> y;
  Point p;
};

struct ShrinkOptions {
  std::uint64_t seed = 0;
  std::size_t max_retries = 50;
  std::uint64_t condition_g_cap = geometry::kDefaultConditionGCap;
};

struct ShrinkResult {
  GenericPachConfiguration config;
  // Vertex-disjoint rainbow simplices with p' on their boundary that were
  // removed (one index per color each).
  std::vector<std::vector<std::size_t>> removed;
  geometry::Verdict condition_g = geometry::Verdict::Indeterminate;
};

// Exhaustive check that `cfg` is a generic configuration of `set`; returns an
// empty string on success, else a description of the first violation.
std::string check_generic_configuration(const LabeledPointSet& set, const GenericPachConfiguration& cfg);

// Removes a maximal vertex-disjoint family of rainbow simplices having p' on
// their boundary (at most d of them under condition (G)), then perturbs p'
// into the interior of all remaining rainbow simplices and verifies the
// result. Requires p' in every closed rainbow simplex of the Y'_i.
// Throws PreconditionError on a condition (G) violation (found by the check
// or by more than d disjoint boundary simplices) or when a part runs empty.
ShrinkResult shrink_to_generic(const LabeledPointSet& set, const std::vector<IndexSet>& y_prime, const Point& p_prime,
                               const ShrinkOptions& options = {});

// For each i, a hyperplane strictly separating p from the union of the Y_j,
// j != i, moved into general position. The arrangement has p in its central
// simplex and each Y_i inside the corner region C_i. Throws PreconditionError
// naming i when p is in the hull of that union.
arrangements::HyperplaneArrangement separating_arrangement(const LabeledPointSet& set,
                                                           const GenericPachConfiguration& cfg,
                                                           std::uint64_t seed = 0, std::size_t max_retries = 50);

}  // namespace pachsel::selection
