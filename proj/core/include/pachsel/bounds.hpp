#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pachsel::cones {

// Explicit upper bound u(d) on the minimum solid angle of a d-simplex:
// min((2 ln(d+1) / d)^{(d-1)/2} * d / (2 pi), 1/2), and exactly 1/2 for d = 1
// where every vertex of a segment sees half of the directions.
double msa_upper_bound(std::size_t d);

// True when the trivial bound 1/2 is the active term of msa_upper_bound.
bool msa_upper_bound_clamped(std::size_t d);

// Leading term sqrt(d+1) / (sqrt(2) e 2^d) * (2e / (pi d))^{d/2} of the
// solid angle of the regular d-simplex.
double rho_d_asymptotic(std::size_t d);

// 2d / ((d+1)! (d+1)): asymptotic share of rainbow simplices containing a
// deep point.
double rainbow_depth_constant(std::size_t d);

struct BoundRow {
  std::size_t dim = 0;
  double u = 0;
  double g = 0;  // 2^d * u, exact in binary floating point
  // The lower bound on the selection constant is 2^{-2^e} with e = d^2 + 3d.
  std::uint64_t lower_bound_exponent = 0;
  double rho = 0;
  bool clamped = false;
};

BoundRow bound_row(std::size_t d);
std::vector<BoundRow> bound_table(std::size_t first, std::size_t last);

}  // namespace pachsel::cones
