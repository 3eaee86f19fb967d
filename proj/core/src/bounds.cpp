#include "pachsel/bounds.hpp"

#include <cmath>
#include <numbers>

#include "pachsel/errors.hpp"

namespace pachsel::cones {
namespace {

void require_positive(std::size_t d) {
  if (d == 0) throw PreconditionError("dimension must be at least 1");
}

double msa_formula(std::size_t d) {
  const double dd = static_cast<double>(d);
  const double log_value = (dd - 1) / 2 * std::log(2 * std::log(dd + 1) / dd) + std::log(dd / (2 * std::numbers::pi));
  return std::exp(log_value);
}

}  // namespace

double msa_upper_bound(std::size_t d) {
  require_positive(d);
  if (d == 1) return 0.5;
  return std::min(msa_formula(d), 0.5);
}

bool msa_upper_bound_clamped(std::size_t d) {
  require_positive(d);
  return d == 1 || msa_formula(d) >= 0.5;
}

double rho_d_asymptotic(std::size_t d) {
  require_positive(d);
  const double dd = static_cast<double>(d);
  const double e = std::numbers::e;
  return std::sqrt(dd + 1) / (std::sqrt(2.0) * e * std::ldexp(1.0, static_cast<int>(d))) *
         std::pow(2 * e / (std::numbers::pi * dd), dd / 2);
}

double rainbow_depth_constant(std::size_t d) {
  require_positive(d);
  double factorial = 1;
  for (std::size_t k = 2; k <= d + 1; ++k) factorial *= static_cast<double>(k);
  return 2.0 * static_cast<double>(d) / (factorial * static_cast<double>(d + 1));
}

BoundRow bound_row(std::size_t d) {
  BoundRow r;
  r.dim = d;
  r.u = msa_upper_bound(d);
  r.g = std::ldexp(r.u, static_cast<int>(d));
  r.lower_bound_exponent = static_cast<std::uint64_t>(d * d + 3 * d);
  r.rho = rho_d_asymptotic(d);
  r.clamped = msa_upper_bound_clamped(d);
  return r;
}

std::vector<BoundRow> bound_table(std::size_t first, std::size_t last) {
  if (first == 0 || last < first) throw PreconditionError("invalid dimension range");
  std::vector<BoundRow> rows;
  for (std::size_t d = first; d <= last; ++d) rows.push_back(bound_row(d));
  return rows;
}

}  // namespace pachsel::cones
