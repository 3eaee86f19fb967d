#include "pachsel/point_set.hpp"

#include <limits>
#include <numeric>

#include "pachsel/errors.hpp"

namespace pachsel {

Point::Point(RationalVector coords) : coords_(std::move(coords)) {
  approx_.reserve(coords_.size());
  for (const auto& c : coords_) approx_.push_back(c.get_d());
}

Point::Point(std::initializer_list<Rational> coords) : Point(RationalVector(coords)) {}

Point Point::from_doubles(std::span<const double> coords) {
  RationalVector exact;
  exact.reserve(coords.size());
  for (double c : coords) exact.push_back(rational_from_double(c));
  return Point(std::move(exact));
}

Point Point::origin(std::size_t dim) { return Point(RationalVector(dim, Rational(0))); }

Point operator+(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("point addition with mismatched dimensions");
  RationalVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
  return Point(std::move(out));
}

Point operator-(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("point subtraction with mismatched dimensions");
  RationalVector out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
  return Point(std::move(out));
}

Point operator*(const Rational& s, const Point& p) {
  RationalVector out(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) out[i] = s * p[i];
  return Point(std::move(out));
}

Point centroid(std::span<const Point* const> points) {
  if (points.empty()) throw PreconditionError("centroid of an empty point list");
  const std::size_t d = points.front()->dim();
  RationalVector sum(d, Rational(0));
  for (const Point* p : points) {
    if (p->dim() != d) throw DimensionMismatch("centroid of points with mismatched dimensions");
    for (std::size_t i = 0; i < d; ++i) sum[i] += (*p)[i];
  }
  const Rational count(static_cast<long>(points.size()));
  for (auto& c : sum) c /= count;
  return Point(std::move(sum));
}

Point centroid(std::span<const Point> points) {
  std::vector<const Point*> ptrs;
  ptrs.reserve(points.size());
  for (const auto& p : points) ptrs.push_back(&p);
  return centroid(std::span<const Point* const>(ptrs));
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product with mismatched dimensions");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational squared_norm(std::span<const Rational> a) { return dot(a, a); }

LabeledPointSet::LabeledPointSet(std::size_t dim, std::vector<std::vector<Point>> colors, bool exact)
    : dim_(dim), colors_(std::move(colors)), exact_(exact) {
  if (dim_ == 0) throw DimensionMismatch("point set dimension must be positive");
  if (colors_.size() != dim_ + 1)
    throw DimensionMismatch("expected " + std::to_string(dim_ + 1) + " colors in dimension " +
                            std::to_string(dim_) + ", got " + std::to_string(colors_.size()));
  for (std::size_t c = 0; c < colors_.size(); ++c)
    for (std::size_t j = 0; j < colors_[c].size(); ++j)
      if (colors_[c][j].dim() != dim_)
        throw DimensionMismatch("point " + std::to_string(j) + " of color " + std::to_string(c) +
                                " has dimension " + std::to_string(colors_[c][j].dim()));
}

std::size_t LabeledPointSet::total_size() const noexcept {
  std::size_t n = 0;
  for (const auto& c : colors_) n += c.size();
  return n;
}

bool LabeledPointSet::equal_sizes() const noexcept {
  for (const auto& c : colors_)
    if (c.size() != colors_.front().size()) return false;
  return true;
}

std::vector<const Point*> LabeledPointSet::all_points() const {
  std::vector<const Point*> out;
  out.reserve(total_size());
  for (const auto& c : colors_)
    for (const auto& p : c) out.push_back(&p);
  return out;
}

std::vector<PointRef> LabeledPointSet::all_refs() const {
  std::vector<PointRef> out;
  out.reserve(total_size());
  for (std::size_t c = 0; c < colors_.size(); ++c)
    for (std::size_t j = 0; j < colors_[c].size(); ++j) out.push_back({c, j});
  return out;
}

LabeledPointSet LabeledPointSet::restrict(const std::vector<IndexSet>& parts) const {
  if (parts.size() != colors_.size()) throw PreconditionError("restrict needs one index set per color");
  std::vector<std::vector<Point>> out(parts.size());
  for (std::size_t c = 0; c < parts.size(); ++c)
    for (std::size_t j : parts[c]) out[c].push_back(colors_[c].at(j));
  return LabeledPointSet(dim_, std::move(out), exact_);
}

IndexSet iota_set(std::size_t n) {
  IndexSet s(n);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

std::size_t rainbow_count(const std::vector<std::size_t>& sizes) {
  std::size_t total = 1;
  for (std::size_t s : sizes) {
    if (s == 0) return 0;
    if (total > std::numeric_limits<std::size_t>::max() / s) return std::numeric_limits<std::size_t>::max();
    total *= s;
  }
  return total;
}

}  // namespace pachsel
