#include "pachsel/separation.hpp"

#include "pachsel/errors.hpp"
#include "pachsel/linear_program.hpp"

namespace pachsel::geometry {
namespace {

void check_dims(const Point& p, std::span<const Point* const> points) {
  for (const Point* s : points)
    if (s->dim() != p.dim()) throw DimensionMismatch("separation: point dimensions differ");
}

}  // namespace

std::optional<RationalVector> convex_combination(const Point& p, std::span<const Point* const> points) {
  check_dims(p, points);
  if (points.empty()) return std::nullopt;
  const std::size_t d = p.dim();
  lp::Problem prob;
  prob.num_vars = points.size();
  prob.objective.assign(points.size(), Rational(0));
  for (std::size_t k = 0; k < d; ++k) {
    lp::Constraint c{RationalVector(points.size()), lp::Relation::Equal, p[k]};
    for (std::size_t j = 0; j < points.size(); ++j) c.coeffs[j] = (*points[j])[k];
    prob.constraints.push_back(std::move(c));
  }
  prob.constraints.push_back({RationalVector(points.size(), Rational(1)), lp::Relation::Equal, Rational(1)});
  auto sol = lp::solve(prob);
  if (sol.status != lp::Status::Optimal) return std::nullopt;
  return sol.x;
}

bool in_convex_hull(const Point& p, std::span<const Point* const> points) {
  return convex_combination(p, points).has_value();
}

std::optional<OrientedHyperplane> strict_separation(const Point& p, std::span<const Point* const> points) {
  if (points.empty()) throw PreconditionError("strict_separation: empty point set");
  check_dims(p, points);
  const std::size_t d = p.dim();
  // Variables a_1..a_d (free), t >= 0.
  lp::Problem prob;
  prob.num_vars = d + 1;
  prob.objective.assign(d + 1, Rational(0));
  prob.objective[d] = 1;
  for (std::size_t k = 0; k < d; ++k) prob.free_vars.push_back(k);
  for (const Point* s : points) {
    lp::Constraint c{RationalVector(d + 1), lp::Relation::GreaterEqual, Rational(0)};
    for (std::size_t k = 0; k < d; ++k) c.coeffs[k] = (*s)[k] - p[k];
    c.coeffs[d] = -1;
    prob.constraints.push_back(std::move(c));
  }
  for (std::size_t k = 0; k < d; ++k) {
    RationalVector e(d + 1, Rational(0));
    e[k] = 1;
    prob.constraints.push_back({e, lp::Relation::LessEqual, Rational(1)});
    prob.constraints.push_back({e, lp::Relation::GreaterEqual, Rational(-1)});
  }
  auto sol = lp::solve(prob);
  if (sol.status != lp::Status::Optimal) throw InternalError("strict_separation: margin LP not optimal");
  const Rational margin = sol.x[d];
  if (sgn(margin) <= 0) return std::nullopt;
  RationalVector normal(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(d));
  Rational offset = dot(normal, p.coords()) + margin / 2;
  return OrientedHyperplane(std::move(normal), std::move(offset));
}

}  // namespace pachsel::geometry
