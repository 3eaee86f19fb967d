#pragma once

#include <vector>

#include "pachsel/hyperplane.hpp"
#include "pachsel/point.hpp"

namespace pachsel::selection {

// A hyperplane spanned by one point of each of the d sets such that each
// open side holds at most floor(|S_i|/2) points of every S_i, so each side
// together with the points on the cut has at least ceil(|S_i|/2) of them.
// Hyperplanes are tried in lexicographic order of the chosen indices and the
// first valid one is returned. Sets must be nonempty and their union in
// general position; throws PreconditionError if no spanned cut exists (which
// signals a general-position violation).
OrientedHyperplane ham_sandwich_bisect(const std::vector<std::vector<const Point*>>& sets);

}  // namespace pachsel::selection
