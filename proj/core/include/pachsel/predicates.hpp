#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pachsel/hyperplane.hpp"
#include "pachsel/point_set.hpp"

namespace pachsel::geometry {

// Sign of det[[1, x_0], ..., [1, x_d]] for d+1 points of R^d, i.e. the sign of
// det(x_1 - x_0, ..., x_d - x_0). A floating-point evaluation with a forward
// error bound answers when it can; otherwise the determinant is evaluated over
// the rationals, so the result is always exact.
int orientation(std::span<const Point* const> points);
int orientation(std::span<const Point> points);

// Same contract, rational arithmetic only. Used as the reference in tests.
int orientation_exact(std::span<const Point* const> points);

// Sign of a square rational determinant.
int determinant_sign(std::vector<RationalVector> rows);
Rational determinant(std::vector<RationalVector> rows);

// Rank of a rational matrix given by rows.
std::size_t matrix_rank(std::vector<RationalVector> rows);

// Unique solution of the square system a x = b, or nullopt if a is singular.
std::optional<RationalVector> solve_linear_system(std::vector<RationalVector> a, RationalVector b);

// Dimension of the affine hull (-1 for an empty list).
int affine_dimension(std::span<const Point* const> points);

// Hyperplane through d affinely independent points of R^d, oriented so that
// side(q) == orientation(x_0, ..., x_{d-1}, q).
// Throws PreconditionError if the points are dependent.
OrientedHyperplane hyperplane_through(std::span<const Point* const> points);

// Exhaustive check that every <= d+1 of the points are affinely independent.
// Returns the first dependent tuple (as indices into `points`) if any.
std::optional<std::vector<std::size_t>> find_dependent_tuple(std::span<const Point* const> points,
                                                            std::size_t dim);
bool in_general_position(std::span<const Point* const> points, std::size_t dim);
bool in_general_position(const LabeledPointSet& set);

// True when `extra` can be added to `points` without breaking general
// position (it avoids every flat spanned by <= d of them).
bool extends_general_position(std::span<const Point* const> points, const Point& extra, std::size_t dim);

enum class SimplexMode { Open, Closed };

// Membership of p in the simplex conv(vertices) (d+1 vertices in R^d).
// Closed mode decides p in conv(vertices); degenerate simplices fall back to
// the exact convex-combination LP. Open mode requires p in the interior, so
// degenerate simplices never contain anything.
bool point_in_simplex(const Point& p, std::span<const Point* const> vertices, SimplexMode mode);
bool point_in_simplex(const Point& p, std::span<const Point> vertices, SimplexMode mode);

// Per-facet orientation data for a rainbow simplex; used by the counting
// loops to avoid re-deriving the simplex orientation for each query.
struct SimplexContainment {
  bool closed = false;
  bool open = false;
};
SimplexContainment classify_in_simplex(const Point& p, std::span<const Point* const> vertices);

}  // namespace pachsel::geometry
