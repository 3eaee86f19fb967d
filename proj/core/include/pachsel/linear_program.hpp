#pragma once

#include <cstddef>
#include <vector>

#include "pachsel/point.hpp"

namespace pachsel::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  RationalVector coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

// maximize (or minimize) objective . x subject to the constraints; variables
// are nonnegative unless listed in free_vars.
struct Problem {
  std::size_t num_vars = 0;
  RationalVector objective;
  bool maximize = true;
  std::vector<Constraint> constraints;
  std::vector<std::size_t> free_vars;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  RationalVector x;
  Rational value;
};

// Dense two-phase simplex over the rationals with Bland's rule, so it always
// terminates and every answer is exact.
Solution solve(const Problem& problem);

}  // namespace pachsel::lp
