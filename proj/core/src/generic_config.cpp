#include "pachsel/generic_config.hpp"

#include "pachsel/errors.hpp"
#include "pachsel/hypergraph.hpp"
#include "pachsel/perturb.hpp"
#include "pachsel/predicates.hpp"
#include "pachsel/separation.hpp"

namespace pachsel::selection {
namespace {

std::vector<const Point*> points_of(const LabeledPointSet& set, const std::vector<IndexSet>& parts) {
  std::vector<const Point*> out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t k : parts[i]) out.push_back(&set.color(i).at(k));
  return out;
}

}  // namespace

std::string check_generic_configuration(const LabeledPointSet& set, const GenericPachConfiguration& cfg) {
  const std::size_t d = set.dim();
  if (cfg.y.size() != d + 1) return "need d+1 index sets";
  if (cfg.p.dim() != d) return "anchor dimension mismatch";
  const auto pts = points_of(set, cfg.y);
  if (!geometry::in_general_position(pts, d)) return "selected points are not in general position";
  if (!geometry::extends_general_position(pts, cfg.p, d)) return "selected points plus p are not in general position";
  std::string failure;
  std::vector<const Point*> verts(d + 1);
  for_each_tuple(cfg.y, [&](std::span<const std::size_t> idx) {
    if (!failure.empty()) return;
    for (std::size_t c = 0; c <= d; ++c) verts[c] = &set.color(c)[idx[c]];
    if (!geometry::point_in_simplex(cfg.p, verts, geometry::SimplexMode::Open)) {
      failure = "p is not interior to the rainbow simplex (";
      for (std::size_t c = 0; c <= d; ++c) failure += (c ? "," : "") + std::to_string(idx[c]);
      failure += ")";
    }
  });
  return failure;
}

ShrinkResult shrink_to_generic(const LabeledPointSet& set, const std::vector<IndexSet>& y_prime, const Point& p_prime,
                               const ShrinkOptions& options) {
  const std::size_t d = set.dim();
  if (y_prime.size() != d + 1) throw DimensionMismatch("shrink_to_generic: need d+1 index sets");
  ShrinkResult result;
  const auto g = geometry::satisfies_condition_G(set, y_prime, options.condition_g_cap);
  result.condition_g = g.verdict;
  if (g.verdict == geometry::Verdict::Fails)
    throw PreconditionError("shrink_to_generic: condition (G) fails: " + g.reason);

  std::vector<std::vector<bool>> removed(d + 1);
  for (std::size_t i = 0; i <= d; ++i) removed[i].assign(set.size(i), false);
  std::vector<const Point*> verts(d + 1);
  for_each_tuple(y_prime, [&](std::span<const std::size_t> idx) {
    for (std::size_t c = 0; c <= d; ++c) verts[c] = &set.color(c)[idx[c]];
    const auto cls = geometry::classify_in_simplex(p_prime, verts);
    if (!cls.closed) throw PreconditionError("shrink_to_generic: p' is outside a rainbow simplex");
    if (cls.open) return;
    for (std::size_t c = 0; c <= d; ++c)
      if (removed[c][idx[c]]) return;
    for (std::size_t c = 0; c <= d; ++c) removed[c][idx[c]] = true;
    result.removed.emplace_back(idx.begin(), idx.end());
  });
  if (result.removed.size() > d)
    throw PreconditionError("shrink_to_generic: " + std::to_string(result.removed.size()) +
                            " disjoint boundary simplices through p' violate condition (G)");
  std::vector<IndexSet> y(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    for (std::size_t k : y_prime[i])
      if (!removed[i][k]) y[i].push_back(k);
    if (y[i].empty()) throw PreconditionError("shrink_to_generic: part " + std::to_string(i) + " ran empty");
  }
  // Every remaining simplex contains p' in its interior; perturb within it.
  const auto sub = set.restrict(y);
  PerturbOptions popts;
  popts.seed = options.seed;
  popts.max_retries = options.max_retries;
  auto moved = perturb_anchor(p_prime, sub, popts);
  result.config = {std::move(y), std::move(moved.p)};
  if (auto why = check_generic_configuration(set, result.config); !why.empty())
    throw InternalError("shrink_to_generic: result is not generic: " + why);
  return result;
}

arrangements::HyperplaneArrangement separating_arrangement(const LabeledPointSet& set,
                                                           const GenericPachConfiguration& cfg, std::uint64_t seed,
                                                           std::size_t max_retries) {
  const std::size_t d = set.dim();
  if (cfg.y.size() != d + 1) throw DimensionMismatch("separating_arrangement: need d+1 index sets");
  std::vector<std::vector<Point>> y_points(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t k : cfg.y[i]) y_points[i].push_back(set.color(i).at(k));
  std::vector<OrientedHyperplane> hyperplanes;
  std::vector<std::vector<const Point*>> keep(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    std::vector<const Point*> others;
    for (std::size_t j = 0; j <= d; ++j)
      if (j != i)
        for (const auto& q : y_points[j]) others.push_back(&q);
    if (others.empty()) throw PreconditionError("separating_arrangement: all parts other than " + std::to_string(i) + " are empty");
    auto h = geometry::strict_separation(cfg.p, others);
    if (!h)
      throw PreconditionError("separating_arrangement: p lies in the hull of the parts other than " +
                              std::to_string(i) + " (input is not a generic configuration)");
    hyperplanes.push_back(std::move(*h));
    keep[i] = std::move(others);
    keep[i].push_back(&cfg.p);
  }
  auto arr = arrangements::perturb_to_general_position(std::move(hyperplanes), keep, seed, max_retries);
  const auto dichotomy = arrangements::separation_dichotomy(cfg.p, arr, y_points);
  if (dichotomy.branch != arrangements::Branch::Inside)
    throw PreconditionError("separating_arrangement: p is separable from all parts (input is not a generic configuration)");
  return arr;
}

}  // namespace pachsel::selection
