#include "pachsel/perturb.hpp"

#include <random>

#include "pachsel/errors.hpp"
#include "pachsel/hypergraph.hpp"
#include "pachsel/predicates.hpp"

namespace pachsel::selection {

Rational squared_distance_to_span(const Point& x, std::span<const Point* const> points) {
  const auto h = geometry::hyperplane_through(points);
  const Rational v = h.evaluate(x);
  return v * v / squared_norm(h.normal());
}

Rational box_half_width(const Rational& squared_bound, std::size_t d) {
  if (sgn(squared_bound) <= 0) throw PreconditionError("box_half_width needs a positive bound");
  const Rational factor(static_cast<long>(4 * d));
  Rational m = dyadic_floor(squared_bound / factor);
  // m <= bound/(4d) is not yet m^2 <= ...; walk down until it holds.
  while (!(m * m * factor < squared_bound)) m /= 2;
  // Walk back up while a larger power of two still fits.
  while ((2 * m) * (2 * m) * factor < squared_bound) m *= 2;
  return m;
}

PerturbResult perturb_anchor(const Point& p, const LabeledPointSet& set, const PerturbOptions& options) {
  const std::size_t d = set.dim();
  if (p.dim() != d) throw DimensionMismatch("perturb_anchor: point dimension");
  std::vector<IndexSet> parts;
  for (std::size_t c = 0; c < set.num_colors(); ++c) parts.push_back(iota_set(set.size(c)));

  // Open-interior simplices of p and the smallest squared facet distance.
  std::vector<std::vector<std::size_t>> open_tuples;
  PerturbResult result;
  bool have_margin = false;
  std::vector<const Point*> verts(d + 1), facet(d);
  for_each_tuple(parts, [&](std::span<const std::size_t> idx) {
    for (std::size_t c = 0; c <= d; ++c) verts[c] = &set.color(c)[idx[c]];
    if (!geometry::classify_in_simplex(p, verts).open) return;
    open_tuples.emplace_back(idx.begin(), idx.end());
    for (std::size_t skip = 0; skip <= d; ++skip) {
      std::size_t k = 0;
      for (std::size_t c = 0; c <= d; ++c)
        if (c != skip) facet[k++] = verts[c];
      Rational dist = squared_distance_to_span(p, facet);
      if (!have_margin || dist < result.squared_margin) {
        result.squared_margin = dist;
        have_margin = true;
      }
    }
  });
  if (open_tuples.empty())
    throw PreconditionError("perturb_anchor: p is interior to no rainbow simplex (no open-interior margin)");
  result.open_depth = open_tuples.size();

  const auto all = set.all_points();
  result.p = p;
  if (geometry::extends_general_position(all, p, d)) return result;

  auto keeps_interiors = [&](const Point& q) {
    for (const auto& idx : open_tuples) {
      for (std::size_t c = 0; c <= d; ++c) verts[c] = &set.color(c)[idx[c]];
      if (!geometry::classify_in_simplex(q, verts).open) return false;
    }
    return true;
  };
  result.box = box_half_width(result.squared_margin, d);
  std::mt19937_64 rng(options.seed);
  for (std::size_t attempt = 1; attempt <= options.max_retries; ++attempt) {
    RationalVector coords(d);
    for (std::size_t k = 0; k < d; ++k) coords[k] = p[k] + random_symmetric_rational(rng, result.box);
    Point q(std::move(coords));
    result.attempts = attempt;
    if (geometry::extends_general_position(all, q, d) && keeps_interiors(q)) {
      result.p = std::move(q);
      result.moved = true;
      return result;
    }
    result.box /= 2;
  }
  throw BudgetError("perturb_anchor: no generic position found after " + std::to_string(options.max_retries) +
                    " attempts");
}

}  // namespace pachsel::selection
