#include "pachsel/linear_program.hpp"

#include <algorithm>

#include "pachsel/errors.hpp"

namespace pachsel::lp {
namespace {

struct Tableau {
  std::vector<RationalVector> rows;  // m rows of n coefficients
  RationalVector rhs;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t r, std::size_t c) {
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k)
        if (sgn(rows[r][k]) != 0) rows[i][k] -= f * rows[r][k];
      rhs[i] -= f * rhs[r];
    }
    basis[r] = c;
  }
};

enum class RunResult { Optimal, Unbounded };

// Maximizes cost . x over the current tableau using only columns for which
// allowed[c] is true as entering candidates.
RunResult run(Tableau& t, const RationalVector& cost, const std::vector<bool>& allowed) {
  while (true) {
    // Reduced cost d_j = c_j - c_B . column_j; Bland: smallest j with d_j > 0.
    std::size_t entering = t.cols;
    for (std::size_t j = 0; j < t.cols && entering == t.cols; ++j) {
      if (!allowed[j]) continue;
      if (std::find(t.basis.begin(), t.basis.end(), j) != t.basis.end()) continue;
      Rational d = cost[j];
      for (std::size_t i = 0; i < t.rows.size(); ++i)
        if (sgn(t.rows[i][j]) != 0) d -= cost[t.basis[i]] * t.rows[i][j];
      if (sgn(d) > 0) entering = j;
    }
    if (entering == t.cols) return RunResult::Optimal;
    std::size_t leaving = t.rows.size();
    Rational best;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (sgn(t.rows[i][entering]) <= 0) continue;
      Rational ratio = t.rhs[i] / t.rows[i][entering];
      if (leaving == t.rows.size() || ratio < best ||
          (ratio == best && t.basis[i] < t.basis[leaving])) {
        leaving = i;
        best = ratio;
      }
    }
    if (leaving == t.rows.size()) return RunResult::Unbounded;
    t.pivot(leaving, entering);
  }
}

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  if (problem.objective.size() != n) throw DimensionMismatch("lp: objective length differs from num_vars");
  std::vector<bool> is_free(n, false);
  for (std::size_t v : problem.free_vars) {
    if (v >= n) throw DimensionMismatch("lp: free variable index out of range");
    is_free[v] = true;
  }
  // Column layout: x_j (or x_j^+), then x_j^- for free variables, then slack /
  // surplus columns, then artificials.
  std::vector<std::size_t> neg_col(n, 0);
  std::size_t cols = n;
  for (std::size_t j = 0; j < n; ++j)
    if (is_free[j]) neg_col[j] = cols++;
  const std::size_t m = problem.constraints.size();
  std::vector<std::size_t> slack_col(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (problem.constraints[i].relation != Relation::Equal) slack_col[i] = cols++;
  const std::size_t first_artificial = cols;

  Tableau t;
  t.rows.assign(m, RationalVector());
  t.rhs.assign(m, Rational(0));
  t.basis.assign(m, 0);
  std::vector<std::size_t> artificial_rows;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    if (c.coeffs.size() != n) throw DimensionMismatch("lp: constraint length differs from num_vars");
    RationalVector row(cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = c.coeffs[j];
      if (is_free[j]) row[neg_col[j]] = -c.coeffs[j];
    }
    Rational rhs = c.rhs;
    if (c.relation == Relation::LessEqual) row[slack_col[i]] = 1;
    if (c.relation == Relation::GreaterEqual) row[slack_col[i]] = -1;
    if (sgn(rhs) < 0) {
      for (auto& v : row) v = -v;
      rhs = -rhs;
    }
    t.rows[i] = std::move(row);
    t.rhs[i] = std::move(rhs);
    if (c.relation != Relation::Equal && sgn(t.rows[i][slack_col[i]]) > 0)
      t.basis[i] = slack_col[i];
    else
      artificial_rows.push_back(i);
  }
  t.cols = first_artificial + artificial_rows.size();
  for (auto& row : t.rows) row.resize(t.cols, Rational(0));
  for (std::size_t k = 0; k < artificial_rows.size(); ++k) {
    t.rows[artificial_rows[k]][first_artificial + k] = 1;
    t.basis[artificial_rows[k]] = first_artificial + k;
  }

  if (!artificial_rows.empty()) {
    RationalVector phase1(t.cols, Rational(0));
    for (std::size_t c = first_artificial; c < t.cols; ++c) phase1[c] = -1;
    run(t, phase1, std::vector<bool>(t.cols, true));
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (t.basis[i] >= first_artificial) infeasibility += t.rhs[i];
    if (sgn(infeasibility) != 0) return {Status::Infeasible, {}, Rational(0)};
    // Drive zero-valued artificials out of the basis; rows where that is
    // impossible are redundant and dropped.
    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < first_artificial) {
        ++i;
        continue;
      }
      std::size_t col = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j)
        if (sgn(t.rows[i][j]) != 0) {
          col = j;
          break;
        }
      if (col < first_artificial) {
        t.pivot(i, col);
        ++i;
      } else {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  RationalVector cost(t.cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    cost[j] = problem.maximize ? problem.objective[j] : -problem.objective[j];
    if (is_free[j]) cost[neg_col[j]] = -cost[j];
  }
  std::vector<bool> allowed(t.cols, false);
  std::fill(allowed.begin(), allowed.begin() + static_cast<std::ptrdiff_t>(first_artificial), true);
  if (run(t, cost, allowed) == RunResult::Unbounded) return {Status::Unbounded, {}, Rational(0)};

  RationalVector column_values(t.cols, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) column_values[t.basis[i]] = t.rhs[i];
  Solution out{Status::Optimal, RationalVector(n, Rational(0)), Rational(0)};
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = column_values[j];
    if (is_free[j]) out.x[j] -= column_values[neg_col[j]];
    out.value += problem.objective[j] * out.x[j];
  }
  return out;
}

}  // namespace pachsel::lp
