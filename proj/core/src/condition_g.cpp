#include "pachsel/condition_g.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>

#include "pachsel/errors.hpp"
#include "pachsel/predicates.hpp"

namespace pachsel::geometry {
namespace {

using Tuple = std::vector<std::vector<std::size_t>>;

double binomial(double n, double k) {
  if (k < 0 || k > n) return 0;
  return std::exp(std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1));
}

struct Plane {
  std::vector<std::size_t> members;
  std::vector<std::uint64_t> mask;
  OrientedHyperplane exact;
  std::vector<double> normal;  // unit length
  double offset = 0;
};

bool masks_disjoint(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & b[w]) return false;
  return true;
}

// Double solve with partial pivoting; returns nullopt when the normals are
// too close to dependent for the answer to be trusted.
std::optional<std::vector<double>> solve_double(const std::vector<const Plane*>& planes, std::size_t d) {
  std::vector<std::vector<double>> a(d, std::vector<double>(d + 1));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) a[r][c] = planes[r]->normal[c];
    a[r][d] = planes[r]->offset;
  }
  double det = 1;
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < d; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
    std::swap(a[piv], a[c]);
    det *= a[c][c];
    if (a[c][c] == 0) return std::nullopt;
    for (std::size_t r = c + 1; r < d; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= d; ++k) a[r][k] -= f * a[c][k];
    }
  }
  if (std::fabs(det) < 1e-6) return std::nullopt;
  std::vector<double> x(d);
  for (std::size_t i = d; i-- > 0;) {
    double s = a[i][d];
    for (std::size_t k = i + 1; k < d; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

std::optional<RationalVector> solve_exact(const std::vector<const Plane*>& planes, std::size_t d) {
  std::vector<RationalVector> a;
  RationalVector b;
  for (std::size_t r = 0; r < d; ++r) {
    a.push_back(planes[r]->exact.normal());
    b.push_back(planes[r]->exact.offset());
  }
  return solve_linear_system(std::move(a), std::move(b));
}

// Do the listed hyperplanes share a point? (rank test)
bool planes_meet(const std::vector<const Plane*>& planes) {
  std::vector<RationalVector> a, ab;
  for (const Plane* p : planes) {
    a.push_back(p->exact.normal());
    RationalVector row = p->exact.normal();
    row.push_back(p->exact.offset());
    ab.push_back(std::move(row));
  }
  return matrix_rank(std::move(a)) == matrix_rank(std::move(ab));
}

// Backtracking search for d+1 pairwise disjoint planes among candidates.
bool pick_disjoint(const std::vector<const Plane*>& cands, std::size_t need, std::size_t start,
                   std::vector<const Plane*>& chosen) {
  if (chosen.size() == need) return true;
  for (std::size_t i = start; i < cands.size(); ++i) {
    bool ok = true;
    for (const Plane* c : chosen) ok = ok && masks_disjoint(c->mask, cands[i]->mask);
    if (!ok) continue;
    chosen.push_back(cands[i]);
    if (pick_disjoint(cands, need, i + 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

Tuple tuple_of(const std::vector<const Plane*>& planes) {
  Tuple t;
  for (const Plane* p : planes) t.push_back(p->members);
  return t;
}

// Small configurations: every maximal tuple uses all points, so enumerate the
// partitions of the point list into d+1 nonempty blocks of size <= d.
ConditionGReport check_partitions(std::span<const Point* const> points, std::size_t dim, std::uint64_t cap) {
  ConditionGReport report;
  const std::size_t n = points.size();
  Tuple blocks;
  bool stop = false;
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (stop) return;
    if (i == n) {
      if (blocks.size() != dim + 1) return;
      if (++report.tuples_checked > cap) {
        report.verdict = Verdict::Indeterminate;
        report.reason = "enumeration cap exceeded";
        stop = true;
        return;
      }
      if (affine_hulls_meet(points, blocks)) {
        report.verdict = Verdict::Fails;
        report.reason = "affine hulls of disjoint subsets intersect";
        report.failing_tuple = blocks;
        stop = true;
      }
      return;
    }
    // Remaining points must be able to fill the blocks still missing.
    if (blocks.size() + (n - i) < dim + 1) return;
    for (std::size_t b = 0; b < blocks.size() && !stop; ++b) {
      if (blocks[b].size() >= dim) continue;
      blocks[b].push_back(i);
      assign(i + 1);
      blocks[b].pop_back();
    }
    if (blocks.size() < dim + 1 && !stop) {
      blocks.push_back({i});
      assign(i + 1);
      blocks.pop_back();
    }
  };
  assign(0);
  if (!stop) {
    report.verdict = Verdict::Holds;
    report.reason = "all partitions checked";
  }
  return report;
}

ConditionGReport check_planes(std::span<const Point* const> points, std::size_t dim, std::uint64_t cap) {
  ConditionGReport report;
  const std::size_t n = points.size();
  const std::size_t d = dim;
  // Number of unordered d-tuples of pairwise disjoint d-subsets.
  double expected = 1;
  for (std::size_t k = 0; k < d; ++k) expected *= binomial(static_cast<double>(n - k * d), static_cast<double>(d));
  expected /= std::tgamma(static_cast<double>(d) + 1);
  if (expected > static_cast<double>(cap)) {
    report.verdict = Verdict::Indeterminate;
    report.reason = "enumeration cap exceeded (" + std::to_string(static_cast<std::uint64_t>(expected)) +
                    " hyperplane tuples)";
    return report;
  }

  const std::size_t words = (n + 63) / 64;
  std::vector<Plane> planes;
  {
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<const Point*> pts(d);
    while (true) {
      Plane pl;
      pl.members = idx;
      pl.mask.assign(words, 0);
      for (std::size_t i = 0; i < d; ++i) {
        pts[i] = points[idx[i]];
        pl.mask[idx[i] / 64] |= std::uint64_t{1} << (idx[i] % 64);
      }
      pl.exact = hyperplane_through(pts);
      double norm = 0;
      for (const auto& c : pl.exact.normal()) norm += c.get_d() * c.get_d();
      norm = std::sqrt(norm);
      for (const auto& c : pl.exact.normal()) pl.normal.push_back(c.get_d() / norm);
      pl.offset = pl.exact.offset().get_d() / norm;
      planes.push_back(std::move(pl));
      std::size_t i = d;
      while (i > 0 && idx[i - 1] == n - d + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  struct Record {
    double key;
    std::uint32_t tuple;
  };
  std::vector<Record> records;
  std::vector<std::uint32_t> tuples;  // d plane indices per tuple
  std::vector<std::vector<double>> exact_points;  // only for ill-conditioned tuples
  std::vector<std::int32_t> exact_slot;
  std::vector<const Plane*> current;
  std::vector<std::uint32_t> current_idx;
  std::vector<std::uint64_t> used(words, 0);
  std::optional<Tuple> failure;

  auto full_point = [&](std::uint32_t t) -> std::vector<double> {
    if (exact_slot[t] >= 0) return exact_points[static_cast<std::size_t>(exact_slot[t])];
    std::vector<const Plane*> ps(d);
    for (std::size_t k = 0; k < d; ++k) ps[k] = &planes[tuples[t * d + k]];
    return *solve_double(ps, d);
  };

  std::function<void(std::size_t)> visit = [&](std::size_t start) {
    if (failure) return;
    if (current.size() == d) {
      ++report.tuples_checked;
      const auto t = static_cast<std::uint32_t>(tuples.size() / d);
      tuples.insert(tuples.end(), current_idx.begin(), current_idx.end());
      auto x = solve_double(current, d);
      if (x) {
        exact_slot.push_back(-1);
        records.push_back({(*x)[0], t});
        return;
      }
      auto ex = solve_exact(current, d);
      if (ex) {
        std::vector<double> xd;
        for (const auto& c : *ex) xd.push_back(c.get_d());
        exact_slot.push_back(static_cast<std::int32_t>(exact_points.size()));
        records.push_back({xd[0], t});
        exact_points.push_back(std::move(xd));
        return;
      }
      exact_slot.push_back(-1);
      // Dependent normals: test every further disjoint plane directly.
      if (!planes_meet(current)) return;
      for (const Plane& other : planes) {
        if (!masks_disjoint(other.mask, used)) continue;
        auto all = current;
        all.push_back(&other);
        if (planes_meet(all)) {
          failure = tuple_of(all);
          return;
        }
      }
      return;
    }
    for (std::size_t i = start; i < planes.size() && !failure; ++i) {
      if (!masks_disjoint(planes[i].mask, used)) continue;
      for (std::size_t w = 0; w < words; ++w) used[w] |= planes[i].mask[w];
      current.push_back(&planes[i]);
      current_idx.push_back(static_cast<std::uint32_t>(i));
      visit(i + 1);
      current.pop_back();
      current_idx.pop_back();
      for (std::size_t w = 0; w < words; ++w) used[w] &= ~planes[i].mask[w];
    }
  };
  visit(0);
  if (failure) {
    report.verdict = Verdict::Fails;
    report.reason = "affine hulls of disjoint subsets intersect";
    report.failing_tuple = *failure;
    return report;
  }

  std::sort(records.begin(), records.end(), [](const Record& a, const Record& b) {
    return a.key < b.key || (a.key == b.key && a.tuple < b.tuple);
  });
  // Union-find over records whose intersection points nearly coincide.
  std::vector<std::size_t> parent(records.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  bool any_close = false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double tol_i = 1e-7 * (1 + std::fabs(records[i].key));
    std::vector<double> xi;
    for (std::size_t j = i + 1; j < records.size() && records[j].key - records[i].key <= tol_i; ++j) {
      if (xi.empty()) xi = full_point(records[i].tuple);
      const auto xj = full_point(records[j].tuple);
      bool close = true;
      for (std::size_t k = 0; k < d && close; ++k)
        close = std::fabs(xi[k] - xj[k]) <= 1e-7 * (1 + std::fabs(xi[k]));
      if (close) {
        parent[find(j)] = find(i);
        any_close = true;
      }
    }
  }
  if (any_close) {
    std::map<std::size_t, std::vector<std::uint32_t>> groups;
    for (std::size_t i = 0; i < records.size(); ++i) groups[find(i)].push_back(records[i].tuple);
    for (const auto& [root, members] : groups) {
      if (members.size() < 2) continue;
      std::map<std::vector<std::string>, std::vector<std::uint32_t>> by_point;
      for (std::uint32_t t : members) {
        std::vector<const Plane*> ps(d);
        for (std::size_t k = 0; k < d; ++k) ps[k] = &planes[tuples[t * d + k]];
        auto x = solve_exact(ps, d);
        std::vector<std::string> key;
        for (const auto& c : *x) key.push_back(c.get_str());
        by_point[key].push_back(t);
      }
      for (const auto& [pt, ts] : by_point) {
        if (ts.size() < 2) continue;
        std::vector<std::uint32_t> ids;
        for (std::uint32_t t : ts)
          for (std::size_t k = 0; k < d; ++k) ids.push_back(tuples[t * d + k]);
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        std::vector<const Plane*> cands;
        for (auto id : ids) cands.push_back(&planes[id]);
        std::vector<const Plane*> chosen;
        if (pick_disjoint(cands, d + 1, 0, chosen)) {
          report.verdict = Verdict::Fails;
          report.reason = "affine hulls of disjoint subsets intersect";
          report.failing_tuple = tuple_of(chosen);
          return report;
        }
      }
    }
  }
  report.verdict = Verdict::Holds;
  report.reason = "all hyperplane tuples checked";
  return report;
}

}  // namespace

bool affine_hulls_meet(std::span<const Point* const> points, const std::vector<std::vector<std::size_t>>& parts) {
  if (parts.empty()) return false;
  for (const auto& part : parts)
    if (part.empty()) return false;
  const std::size_t d = points[parts[0][0]]->dim();
  // Unknowns: lambda_{i,j} for every member j of every part i.
  std::size_t vars = 0;
  std::vector<std::size_t> base;
  for (const auto& part : parts) {
    base.push_back(vars);
    vars += part.size();
  }
  std::vector<RationalVector> rows;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      RationalVector row(vars + 1, Rational(0));
      for (std::size_t j = 0; j < parts[i].size(); ++j) row[base[i] + j] = (*points[parts[i][j]])[k];
      for (std::size_t j = 0; j < parts[0].size(); ++j) row[base[0] + j] = -(*points[parts[0][j]])[k];
      rows.push_back(std::move(row));
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    RationalVector row(vars + 1, Rational(0));
    for (std::size_t j = 0; j < parts[i].size(); ++j) row[base[i] + j] = 1;
    row[vars] = 1;
    rows.push_back(std::move(row));
  }
  std::vector<RationalVector> coeffs;
  for (const auto& r : rows) coeffs.emplace_back(r.begin(), r.end() - 1);
  return matrix_rank(std::move(coeffs)) == matrix_rank(std::move(rows));
}

ConditionGReport check_condition_G(std::span<const Point* const> points, std::size_t dim, std::uint64_t cap) {
  ConditionGReport report;
  const double gp_tuples = binomial(static_cast<double>(points.size()), static_cast<double>(dim + 1));
  if (gp_tuples > static_cast<double>(cap)) {
    report.reason = "general-position enumeration exceeds cap";
    return report;
  }
  if (auto bad = find_dependent_tuple(points, dim)) {
    report.verdict = Verdict::Fails;
    report.reason = "not in general position";
    report.failing_tuple = {*bad};
    return report;
  }
  report.tuples_checked = static_cast<std::uint64_t>(gp_tuples);
  if (dim == 1 || points.size() < dim + 1) {
    // In R^1 the hulls are single points; with fewer than d+1 points some
    // subset of every tuple is empty.
    report.verdict = Verdict::Holds;
    report.reason = dim == 1 ? "distinct points on a line" : "fewer than d+1 points";
    return report;
  }
  const std::uint64_t remaining = cap > report.tuples_checked ? cap - report.tuples_checked : 0;
  ConditionGReport rest = points.size() >= dim * (dim + 1) ? check_planes(points, dim, remaining)
                                                           : check_partitions(points, dim, remaining);
  rest.tuples_checked += report.tuples_checked;
  return rest;
}

ConditionGReport satisfies_condition_G(const LabeledPointSet& set, std::uint64_t cap) {
  auto pts = set.all_points();
  return check_condition_G(pts, set.dim(), cap);
}

ConditionGReport satisfies_condition_G(const LabeledPointSet& set, const std::vector<IndexSet>& parts,
                                       std::uint64_t cap) {
  if (parts.size() != set.num_colors()) throw DimensionMismatch("condition (G): need one index set per color");
  return satisfies_condition_G(set.restrict(parts), cap);
}

}  // namespace pachsel::geometry
