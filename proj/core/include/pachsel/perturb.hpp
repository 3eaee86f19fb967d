#pragma once

#include <cstddef>
#include <cstdint>

#include "pachsel/point_set.hpp"

namespace pachsel::selection {

struct PerturbOptions {
  std::uint64_t seed = 0;
  std::size_t max_retries = 50;
};

struct PerturbResult {
  Point p;
  bool moved = false;
  std::size_t attempts = 0;
  // Rainbow simplices with p in their interior (all kept by the move).
  std::uint64_t open_depth = 0;
  // Squared distance from p to the nearest facet of those simplices, and
  // the box half-width used for the random displacement.
  Rational squared_margin;
  Rational box;
};

// Moves p by a random rational vector shorter than half its distance to the
// nearest facet of every rainbow simplex containing it in the interior, so
// that the point set plus p' is in general position and p' stays in the
// interior of each of those simplices (both verified exhaustively).
// p is returned unchanged when it is already generic. Throws
// PreconditionError when no rainbow simplex contains p in its interior and
// BudgetError when every retry fails.
PerturbResult perturb_anchor(const Point& p, const LabeledPointSet& set, const PerturbOptions& options = {});

// Squared Euclidean distance from x to the hyperplane through the d points.
Rational squared_distance_to_span(const Point& x, std::span<const Point* const> points);

// Largest m = 2^-k with m^2 * 4d < bound (bound > 0).
Rational box_half_width(const Rational& squared_bound, std::size_t d);

}  // namespace pachsel::selection
