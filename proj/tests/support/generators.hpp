#pragma once

#include <random>
#include <vector>

#include "oracles.hpp"
#include "pachsel/arrangement.hpp"
#include "pachsel/predicates.hpp"

namespace gen {

using pachsel::Point;
using pachsel::Rational;

// d+1 random rational points in general position (nonzero orientation).
inline std::vector<Point> random_simplex(std::mt19937_64& rng, std::size_t d, long lo = -4, long hi = 4) {
  for (;;) {
    std::vector<Point> v;
    for (std::size_t i = 0; i <= d; ++i) v.push_back(oracle::random_point(rng, d, lo, hi));
    if (oracle::orientation(v) != 0) return v;
  }
}

// Arrangement whose central simplex is conv(vertices): H_i passes through all
// vertices but the i-th.
inline pachsel::arrangements::HyperplaneArrangement arrangement_of(const std::vector<Point>& vertices) {
  const std::size_t d = vertices.size() - 1;
  std::vector<pachsel::OrientedHyperplane> hs;
  for (std::size_t i = 0; i <= d; ++i) {
    std::vector<const Point*> face;
    for (std::size_t j = 0; j <= d; ++j)
      if (j != i) face.push_back(&vertices[j]);
    hs.push_back(pachsel::geometry::hyperplane_through(face));
  }
  return pachsel::arrangements::HyperplaneArrangement::build(std::move(hs));
}

// Random nonnegative weights on a 1/den grid, optionally normalized to sum 1.
inline std::vector<Rational> random_weights(std::mt19937_64& rng, std::size_t k, bool normalize, long den = 64) {
  std::uniform_int_distribution<long> u(0, den);
  std::vector<Rational> w(k);
  Rational sum = 0;
  for (auto& x : w) {
    x = Rational(u(rng), den);
    x.canonicalize();
    sum += x;
  }
  if (normalize) {
    if (sum == 0) {
      w[0] = 1;
      sum = 1;
    }
    for (auto& x : w) x /= sum;
  }
  return w;
}

// A point of the corner region at vertex i: h_i plus a nonnegative
// combination of the directions h_i - h_j.
inline Point random_corner_point(std::mt19937_64& rng, const pachsel::arrangements::HyperplaneArrangement& arr,
                                 std::size_t i) {
  const std::size_t d = arr.dim();
  const auto w = random_weights(rng, d + 1, false);
  Point y = arr.vertex(i);
  for (std::size_t j = 0; j <= d; ++j)
    if (j != i) y = y + Rational(4) * w[j] * (arr.vertex(i) - arr.vertex(j));
  return y;
}

inline Point random_simplex_point(std::mt19937_64& rng, const std::vector<Point>& vertices) {
  const auto w = random_weights(rng, vertices.size(), true);
  Point p = Rational(0) * vertices[0];
  for (std::size_t j = 0; j < vertices.size(); ++j) p = p + w[j] * vertices[j];
  return p;
}

}  // namespace gen
