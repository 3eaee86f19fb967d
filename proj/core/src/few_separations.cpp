#include "pachsel/few_separations.hpp"

#include <algorithm>

#include "pachsel/errors.hpp"
#include "pachsel/ham_sandwich.hpp"
#include "pachsel/predicates.hpp"

namespace pachsel::selection {
namespace {

// Some solution of the (possibly underdetermined) system rows * x = rhs, or
// nullopt if inconsistent.
std::optional<RationalVector> any_solution(std::vector<RationalVector> rows, RationalVector rhs, std::size_t vars) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < vars && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && sgn(rows[piv][c]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    std::swap(rhs[piv], rhs[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t k = 0; k < vars; ++k) rows[i][k] -= f * rows[r][k];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (sgn(rhs[i]) != 0) return std::nullopt;
  RationalVector x(vars, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

// Tilts h about the flat spanned by the points of `all` lying on it so that
// p leaves it while no other point changes side.
OrientedHyperplane tilt_off_anchor(const OrientedHyperplane& h, const Point& p, const std::vector<const Point*>& all) {
  const std::size_t d = p.dim();
  std::vector<RationalVector> rows;
  RationalVector rhs;
  for (const Point* u : all) {
    if (h.side(*u) != 0) continue;
    RationalVector row(u->coords().begin(), u->coords().end());
    row.push_back(-1);
    rows.push_back(std::move(row));
    rhs.push_back(0);
  }
  RationalVector prow(p.coords().begin(), p.coords().end());
  prow.push_back(-1);
  rows.push_back(std::move(prow));
  rhs.push_back(1);
  auto wc = any_solution(std::move(rows), std::move(rhs), d + 1);
  if (!wc) throw PreconditionError("few_separations: p lies in the flat of the points on a cut (general position)");
  const RationalVector w(wc->begin(), wc->begin() + static_cast<std::ptrdiff_t>(d));
  const Rational c = (*wc)[d];
  // eta < |h(q)| / |w.q - c| for every point off h keeps all sides.
  bool have = false;
  Rational eta = 1;
  for (const Point* q : all) {
    const Rational hv = h.evaluate(*q);
    if (sgn(hv) == 0) continue;
    const Rational wv = dot(w, q->coords()) - c;
    if (sgn(wv) == 0) continue;
    const Rational bound = abs(hv) / (2 * abs(wv));
    if (!have || bound < eta) {
      eta = bound;
      have = true;
    }
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    RationalVector normal = h.normal();
    for (std::size_t k = 0; k < d; ++k) normal[k] += eta * w[k];
    if (std::any_of(normal.begin(), normal.end(), [](const Rational& v) { return sgn(v) != 0; }))
      return OrientedHyperplane(std::move(normal), h.offset() + eta * c);
    eta /= 2;
  }
  throw InternalError("few_separations: tilting produced a zero normal");
}

}  // namespace

FewSeparationsResult few_separations(const LabeledPointSet& set, const std::vector<IndexSet>& parts, const Point& p,
                                     const FewSeparationsOptions& options) {
  const std::size_t d = set.dim();
  if (parts.size() != d + 1) throw DimensionMismatch("few_separations: need d+1 parts");
  if (p.dim() != d) throw DimensionMismatch("few_separations: anchor dimension");
  std::vector<const Point*> all;
  for (std::size_t i = 0; i <= d; ++i) {
    if (parts[i].empty()) throw PreconditionError("few_separations: empty part " + std::to_string(i));
    for (std::size_t k : parts[i]) all.push_back(&set.color(i).at(k));
  }
  if (options.check_general_position) {
    if (!geometry::in_general_position(all, d))
      throw PreconditionError("few_separations: parts are not in general position");
    if (!geometry::extends_general_position(all, p, d))
      throw PreconditionError("few_separations: parts plus p are not in general position");
  }

  FewSeparationsResult result;
  std::vector<IndexSet> current = parts;
  std::vector<OrientedHyperplane> cuts;
  for (std::size_t j = 0; j <= d; ++j) {
    SeparationRound round;
    for (const auto& s : current) round.sizes_before.push_back(s.size());
    std::vector<std::vector<const Point*>> halves;
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == j) continue;
      std::vector<const Point*> pts;
      for (std::size_t k : current[i]) pts.push_back(&set.color(i)[k]);
      halves.push_back(std::move(pts));
    }
    OrientedHyperplane cut = ham_sandwich_bisect(halves);
    if (cut.side(p) == 0) {
      round.anchor_on_cut = true;
      cut = tilt_off_anchor(cut, p, all);
    }
    if (cut.side(p) > 0) cut = cut.flipped();
    // Shift toward p by half the smallest nonzero |value| among the points
    // and p; points on the cut move to the far side, nothing else moves.
    Rational shift = abs(cut.evaluate(p));
    for (const Point* q : all) {
      const Rational v = abs(cut.evaluate(*q));
      if (sgn(v) != 0 && v < shift) shift = v;
    }
    shift /= 2;
    cut = OrientedHyperplane(cut.normal(), cut.offset() - shift);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == j) continue;
      IndexSet kept;
      for (std::size_t k : current[i])
        if (cut.side(set.color(i)[k]) > 0) kept.push_back(k);
      const std::size_t need = (current[i].size() + 1) / 2;
      if (kept.size() < need)
        throw InternalError("few_separations: round " + std::to_string(j) + " kept " + std::to_string(kept.size()) +
                            " of " + std::to_string(current[i].size()) + " points of part " + std::to_string(i));
      current[i] = std::move(kept);
    }
    for (const auto& s : current) round.sizes_after.push_back(s.size());
    result.rounds.push_back(std::move(round));
    cuts.push_back(std::move(cut));
  }

  std::vector<std::vector<Point>> y_points(d + 1);
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t k : current[i]) y_points[i].push_back(set.color(i)[k]);
  std::vector<std::vector<const Point*>> keep(d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    keep[j].push_back(&p);
    for (std::size_t i = 0; i <= d; ++i)
      if (i != j)
        for (const auto& q : y_points[i]) keep[j].push_back(&q);
  }
  result.arrangement = arrangements::perturb_to_general_position(std::move(cuts), keep, options.seed, options.max_retries);
  const auto dichotomy = arrangements::separation_dichotomy(p, result.arrangement, y_points);
  result.branch = dichotomy.branch == arrangements::Branch::Inside ? FewSeparationsBranch::AllContain
                                                                   : FewSeparationsBranch::NoneContain;
  result.y = std::move(current);
  return result;
}

}  // namespace pachsel::selection
