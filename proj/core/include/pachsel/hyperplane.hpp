#pragma once

#include "pachsel/point.hpp"

namespace pachsel {

// {x : normal . x = offset}; x is on the positive side iff normal . x > offset.
class OrientedHyperplane {
 public:
  OrientedHyperplane() = default;
  // Throws PreconditionError for a zero normal.
  OrientedHyperplane(RationalVector normal, Rational offset);

  std::size_t dim() const noexcept { return normal_.size(); }
  const RationalVector& normal() const noexcept { return normal_; }
  const Rational& offset() const noexcept { return offset_; }

  // normal . x - offset
  Rational evaluate(const Point& x) const;
  // +1, 0 or -1.
  int side(const Point& x) const;
  OrientedHyperplane flipped() const;

  friend bool operator==(const OrientedHyperplane&, const OrientedHyperplane&) = default;

 private:
  RationalVector normal_;
  Rational offset_;
};

}  // namespace pachsel
