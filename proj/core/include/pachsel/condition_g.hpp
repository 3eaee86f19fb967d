#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pachsel/point_set.hpp"

namespace pachsel::geometry {

enum class Verdict { Holds, Fails, Indeterminate };

struct ConditionGReport {
  Verdict verdict = Verdict::Indeterminate;
  std::string reason;
  // Offending subsets as indices into the checked point list (color-major
  // order for LabeledPointSet overloads).
  std::vector<std::vector<std::size_t>> failing_tuple;
  std::uint64_t tuples_checked = 0;
};

inline constexpr std::uint64_t kDefaultConditionGCap = 10'000'000;

// Exact: do the affine hulls of the given subsets share a point? Decided by
// comparing rank(A) and rank(A|b) of the barycentric-coordinate system.
// An empty subset has an empty hull.
bool affine_hulls_meet(std::span<const Point* const> points, const std::vector<std::vector<std::size_t>>& parts);

// General position plus: no d+1 pairwise disjoint subsets of size <= d have
// affine hulls with a common point. Enumeration stops after `cap` tuples with
// an Indeterminate verdict.
ConditionGReport check_condition_G(std::span<const Point* const> points, std::size_t dim,
                                   std::uint64_t cap = kDefaultConditionGCap);

ConditionGReport satisfies_condition_G(const LabeledPointSet& set, std::uint64_t cap = kDefaultConditionGCap);

// Same check restricted to the points selected by one index set per color.
ConditionGReport satisfies_condition_G(const LabeledPointSet& set, const std::vector<IndexSet>& parts,
                                       std::uint64_t cap = kDefaultConditionGCap);

}  // namespace pachsel::geometry
