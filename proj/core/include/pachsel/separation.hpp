#pragma once

#include <optional>
#include <span>

#include "pachsel/hyperplane.hpp"
#include "pachsel/point.hpp"

namespace pachsel::geometry {

// Exact test of p in conv(points) (closed hull) by LP feasibility.
bool in_convex_hull(const Point& p, std::span<const Point* const> points);

// Convex-combination weights realizing p, if p lies in the closed hull.
std::optional<RationalVector> convex_combination(const Point& p, std::span<const Point* const> points);

// Hyperplane H with normal.p < offset and normal.s > offset for every s, from
// the max-margin LP  max t  s.t.  a.(s - p) >= t,  -1 <= a_k <= 1.
// Returns nullopt ("infeasible") exactly when p is in the closed hull of S.
// Throws PreconditionError when S is empty.
std::optional<OrientedHyperplane> strict_separation(const Point& p, std::span<const Point* const> points);

}  // namespace pachsel::geometry
