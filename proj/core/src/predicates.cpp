#include "pachsel/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "pachsel/errors.hpp"
#include "pachsel/separation.hpp"

namespace pachsel {

OrientedHyperplane::OrientedHyperplane(RationalVector normal, Rational offset)
    : normal_(std::move(normal)), offset_(std::move(offset)) {
  if (std::all_of(normal_.begin(), normal_.end(), [](const Rational& c) { return sgn(c) == 0; }))
    throw PreconditionError("hyperplane normal must be nonzero");
}

Rational OrientedHyperplane::evaluate(const Point& x) const {
  if (x.dim() != dim()) throw DimensionMismatch("hyperplane/point dimension mismatch");
  return dot(normal_, x.coords()) - offset_;
}

int OrientedHyperplane::side(const Point& x) const { return sgn(evaluate(x)); }

OrientedHyperplane OrientedHyperplane::flipped() const {
  RationalVector n(normal_.size());
  for (std::size_t i = 0; i < n.size(); ++i) n[i] = -normal_[i];
  return OrientedHyperplane(std::move(n), -offset_);
}

namespace geometry {
namespace {

constexpr std::size_t kMaxFilteredDim = 5;

struct Permutations {
  std::vector<std::vector<std::uint8_t>> perms;
  std::vector<int> parity;
};

const Permutations& permutations_of(std::size_t d) {
  static const std::array<Permutations, kMaxFilteredDim + 1> table = [] {
    std::array<Permutations, kMaxFilteredDim + 1> out;
    for (std::size_t n = 1; n <= kMaxFilteredDim; ++n) {
      std::vector<std::uint8_t> p(n);
      std::iota(p.begin(), p.end(), std::uint8_t{0});
      do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (p[i] > p[j]) ++inversions;
        out[n].perms.push_back(p);
        out[n].parity.push_back(inversions % 2 == 0 ? 1 : -1);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
  }();
  return table[d];
}

// Returns +1/-1 when the floating-point determinant of the difference matrix
// is certainly nonzero, 0 when the filter cannot decide.
int filtered_orientation(std::span<const Point* const> pts, std::size_t d) {
  if (d == 0 || d > kMaxFilteredDim) return 0;
  std::array<std::array<double, kMaxFilteredDim>, kMaxFilteredDim> m{};
  std::array<std::array<double, kMaxFilteredDim>, kMaxFilteredDim> mag{};
  const auto base = pts[0]->approx();
  for (std::size_t j = 0; j < d; ++j) {
    const auto x = pts[j + 1]->approx();
    for (std::size_t i = 0; i < d; ++i) {
      m[i][j] = x[i] - base[i];
      mag[i][j] = std::fabs(x[i]) + std::fabs(base[i]);
    }
  }
  const auto& table = permutations_of(d);
  double det = 0.0;
  double permanent = 0.0;
  for (std::size_t k = 0; k < table.perms.size(); ++k) {
    const auto& p = table.perms[k];
    double term = table.parity[k];
    double bound = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
      term *= m[i][p[i]];
      bound *= mag[i][p[i]];
    }
    det += term;
    permanent += bound;
  }
  if (!std::isfinite(det) || !std::isfinite(permanent) || permanent < 1e-250) return 0;
  // Rational-to-double conversion truncates (2u), the subtraction rounds (u),
  // the d-1 products and T-1 additions each add at most u relative to the
  // permanent of the magnitudes.
  constexpr double u = std::numeric_limits<double>::epsilon() / 2;
  const double terms = static_cast<double>(table.perms.size());
  const double bound = (5.0 * static_cast<double>(d) + terms + 4.0) * u * permanent * 1.1;
  if (det > bound) return 1;
  if (det < -bound) return -1;
  return 0;
}

void check_orientation_input(std::span<const Point* const> pts) {
  if (pts.empty()) throw DimensionMismatch("orientation needs d+1 points");
  const std::size_t d = pts.size() - 1;
  for (const Point* p : pts)
    if (p->dim() != d)
      throw DimensionMismatch("orientation: expected " + std::to_string(d + 1) + " points of dimension " +
                              std::to_string(d));
}

// Rank of a rational matrix by Gaussian elimination (rows are modified).
std::size_t rank_of(std::vector<RationalVector>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t matrix_rank(std::vector<RationalVector> rows) { return rank_of(rows); }

std::optional<RationalVector> solve_linear_system(std::vector<RationalVector> a, RationalVector b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw DimensionMismatch("solve_linear_system: rhs length");
  for (const auto& r : a)
    if (r.size() != n) throw DimensionMismatch("solve_linear_system: matrix must be square");
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(a[pivot][c]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[c]);
    std::swap(b[pivot], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

Rational determinant(std::vector<RationalVector> rows) {
  const std::size_t n = rows.size();
  for (const auto& r : rows)
    if (r.size() != n) throw DimensionMismatch("determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != c) {
      std::swap(rows[pivot], rows[c]);
      det = -det;
    }
    det *= rows[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      Rational f = rows[r][c] / rows[c][c];
      for (std::size_t k = c; k < n; ++k) rows[r][k] -= f * rows[c][k];
    }
  }
  return det;
}

int determinant_sign(std::vector<RationalVector> rows) { return sgn(determinant(std::move(rows))); }

int orientation_exact(std::span<const Point* const> pts) {
  check_orientation_input(pts);
  const std::size_t d = pts.size() - 1;
  std::vector<RationalVector> rows(d, RationalVector(d));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) rows[i][j] = (*pts[j + 1])[i] - (*pts[0])[i];
  return determinant_sign(std::move(rows));
}

int orientation(std::span<const Point* const> pts) {
  check_orientation_input(pts);
  const std::size_t d = pts.size() - 1;
  if (d == 1) return cmp((*pts[1])[0], (*pts[0])[0]) > 0 ? 1 : (cmp((*pts[1])[0], (*pts[0])[0]) < 0 ? -1 : 0);
  if (int s = filtered_orientation(pts, d); s != 0) return s;
  return orientation_exact(pts);
}

int orientation(std::span<const Point> pts) {
  std::vector<const Point*> ptrs;
  ptrs.reserve(pts.size());
  for (const auto& p : pts) ptrs.push_back(&p);
  return orientation(std::span<const Point* const>(ptrs));
}

int affine_dimension(std::span<const Point* const> pts) {
  if (pts.empty()) return -1;
  const std::size_t d = pts.front()->dim();
  std::vector<RationalVector> rows;
  for (std::size_t j = 1; j < pts.size(); ++j) {
    if (pts[j]->dim() != d) throw DimensionMismatch("affine_dimension: mixed dimensions");
    RationalVector r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = (*pts[j])[i] - (*pts[0])[i];
    rows.push_back(std::move(r));
  }
  return static_cast<int>(rank_of(rows));
}

OrientedHyperplane hyperplane_through(std::span<const Point* const> pts) {
  if (pts.empty()) throw DimensionMismatch("hyperplane_through needs d points");
  const std::size_t d = pts.size();
  for (const Point* p : pts)
    if (p->dim() != d) throw DimensionMismatch("hyperplane_through: need d points of dimension d");
  // det[[1,x_0],...,[1,x_{d-1}],[1,q]] is affine in q: c_0 + sum_k c_k q_k.
  auto det_at = [&](std::size_t unit) {
    std::vector<RationalVector> rows(d + 1, RationalVector(d + 1));
    for (std::size_t r = 0; r < d; ++r) {
      rows[r][0] = 1;
      for (std::size_t i = 0; i < d; ++i) rows[r][i + 1] = (*pts[r])[i];
    }
    rows[d][0] = 1;
    for (std::size_t i = 0; i < d; ++i) rows[d][i + 1] = (i + 1 == unit) ? 1 : 0;
    return determinant(std::move(rows));
  };
  const Rational c0 = det_at(0);
  RationalVector normal(d);
  bool nonzero = false;
  for (std::size_t k = 1; k <= d; ++k) {
    normal[k - 1] = det_at(k) - c0;
    nonzero = nonzero || sgn(normal[k - 1]) != 0;
  }
  if (!nonzero) throw PreconditionError("hyperplane_through: points are affinely dependent");
  return OrientedHyperplane(std::move(normal), -c0);
}

std::optional<std::vector<std::size_t>> find_dependent_tuple(std::span<const Point* const> pts,
                                                            std::size_t dim) {
  for (const Point* p : pts)
    if (p->dim() != dim) throw DimensionMismatch("general position check: mixed dimensions");
  const std::size_t n = pts.size();
  if (n <= dim + 1) {
    if (affine_dimension(pts) != static_cast<int>(n) - 1) {
      std::vector<std::size_t> all(n);
      std::iota(all.begin(), all.end(), std::size_t{0});
      return all;
    }
    return std::nullopt;
  }
  // Subsets of independent sets are independent, so (d+1)-subsets suffice.
  const std::size_t k = dim + 1;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<const Point*> tuple(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) tuple[i] = pts[idx[i]];
    if (orientation(std::span<const Point* const>(tuple)) == 0) return idx;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return std::nullopt;
}

bool in_general_position(std::span<const Point* const> pts, std::size_t dim) {
  return !find_dependent_tuple(pts, dim).has_value();
}

bool in_general_position(const LabeledPointSet& set) {
  auto pts = set.all_points();
  return in_general_position(pts, set.dim());
}

bool extends_general_position(std::span<const Point* const> pts, const Point& extra, std::size_t dim) {
  if (extra.dim() != dim) throw DimensionMismatch("extends_general_position: dimension mismatch");
  const std::size_t n = pts.size();
  if (n < dim) {
    std::vector<const Point*> all(pts.begin(), pts.end());
    all.push_back(&extra);
    return affine_dimension(all) == static_cast<int>(n);
  }
  // Every flat spanned by fewer than d points lies in one spanned by d of
  // them, so it is enough to test the d-subsets.
  std::vector<std::size_t> idx(dim);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<const Point*> tuple(dim + 1);
  tuple[dim] = &extra;
  while (true) {
    for (std::size_t i = 0; i < dim; ++i) tuple[i] = pts[idx[i]];
    if (orientation(std::span<const Point* const>(tuple)) == 0) return false;
    std::size_t i = dim;
    while (i > 0 && idx[i - 1] == n - dim + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  return true;
}

SimplexContainment classify_in_simplex(const Point& p, std::span<const Point* const> vertices) {
  const std::size_t d = p.dim();
  if (vertices.size() != d + 1) throw DimensionMismatch("simplex needs d+1 vertices");
  for (const Point* v : vertices)
    if (v->dim() != d) throw DimensionMismatch("simplex vertex dimension mismatch");
  const int sigma = orientation(vertices);
  if (sigma == 0) {
    std::vector<const Point*> verts(vertices.begin(), vertices.end());
    return {in_convex_hull(p, verts), false};
  }
  std::array<const Point*, 16> buf{};
  std::vector<const Point*> heap;
  std::span<const Point*> tuple;
  if (d + 1 <= buf.size()) {
    tuple = std::span<const Point*>(buf.data(), d + 1);
  } else {
    heap.resize(d + 1);
    tuple = std::span<const Point*>(heap);
  }
  bool open = true;
  for (std::size_t i = 0; i <= d; ++i) {
    for (std::size_t j = 0; j <= d; ++j) tuple[j] = (j == i) ? &p : vertices[j];
    const int s = orientation(std::span<const Point* const>(tuple.data(), tuple.size()));
    if (s == -sigma) return {false, false};
    if (s == 0) open = false;
  }
  return {true, open};
}

bool point_in_simplex(const Point& p, std::span<const Point* const> vertices, SimplexMode mode) {
  const auto c = classify_in_simplex(p, vertices);
  return mode == SimplexMode::Closed ? c.closed : c.open;
}

bool point_in_simplex(const Point& p, std::span<const Point> vertices, SimplexMode mode) {
  std::vector<const Point*> ptrs;
  ptrs.reserve(vertices.size());
  for (const auto& v : vertices) ptrs.push_back(&v);
  return point_in_simplex(p, std::span<const Point* const>(ptrs), mode);
}

}  // namespace geometry
}  // namespace pachsel
