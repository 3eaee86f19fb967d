#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "pachsel/rational.hpp"

namespace pachsel {

using RationalVector = std::vector<Rational>;

// A point of R^d with exact rational coordinates. A double approximation of
// every coordinate is cached for filtered predicates and Monte Carlo work;
// the rational coordinates are always authoritative.
class Point {
 public:
  Point() = default;
  explicit Point(RationalVector coords);
  Point(std::initializer_list<Rational> coords);

  // Exact conversion of binary64 coordinates.
  static Point from_doubles(std::span<const double> coords);
  static Point origin(std::size_t dim);

  std::size_t dim() const noexcept { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  std::span<const Rational> coords() const noexcept { return coords_; }
  std::span<const double> approx() const noexcept { return approx_; }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }

 private:
  RationalVector coords_;
  std::vector<double> approx_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const Rational& s, const Point& p);

// Centroid of a non-empty list of points.
Point centroid(std::span<const Point> points);
Point centroid(std::span<const Point* const> points);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational squared_norm(std::span<const Rational> a);

}  // namespace pachsel
