#include "pachsel/arrangement.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <iostream>
#include <nlohmann/json.hpp>

#include "pachsel/errors.hpp"
#include "pachsel/predicates.hpp"
#include "pachsel/separation.hpp"

namespace pachsel::arrangements {
namespace {

nlohmann::json point_json(const Point& p) {
  auto a = nlohmann::json::array();
  for (const auto& c : p.coords()) a.push_back(to_string(c));
  return a;
}

void dump_counterexample(const HyperplaneArrangement& arr, std::span<const Point> ys, const Point& p) {
  nlohmann::json bundle;
  bundle["kind"] = "corners_cover_simplex counterexample";
  for (const auto& h : arr.hyperplanes()) {
    nlohmann::json hj;
    hj["normal"] = point_json(Point(h.normal()));
    hj["offset"] = to_string(h.offset());
    bundle["hyperplanes"].push_back(hj);
  }
  for (const auto& y : ys) bundle["corner_points"].push_back(point_json(y));
  bundle["p"] = point_json(p);
  if (const char* dir = std::getenv("PACHSEL_DUMP_DIR")) {
    std::ofstream out(std::string(dir) + "/corners_cover_counterexample.json", std::ios::app);
    out << bundle.dump() << '\n';
  } else {
    std::cerr << bundle.dump() << '\n';
  }
}

}  // namespace

HyperplaneArrangement HyperplaneArrangement::build(std::vector<OrientedHyperplane> hyperplanes) {
  if (hyperplanes.empty()) throw DimensionMismatch("arrangement needs d+1 hyperplanes");
  const std::size_t d = hyperplanes.front().dim();
  if (hyperplanes.size() != d + 1) throw DimensionMismatch("arrangement needs exactly d+1 hyperplanes in R^d");
  for (const auto& h : hyperplanes)
    if (h.dim() != d) throw DimensionMismatch("arrangement hyperplanes of mixed dimension");
  HyperplaneArrangement arr;
  for (std::size_t i = 0; i <= d; ++i) {
    std::vector<RationalVector> a;
    RationalVector b;
    for (std::size_t j = 0; j <= d; ++j) {
      if (j == i) continue;
      a.push_back(hyperplanes[j].normal());
      b.push_back(hyperplanes[j].offset());
    }
    auto h = geometry::solve_linear_system(std::move(a), std::move(b));
    if (!h) throw PreconditionError("arrangement: normals of the hyperplanes other than H_" + std::to_string(i) +
                                    " are linearly dependent");
    arr.vertices_.emplace_back(std::move(*h));
  }
  for (std::size_t i = 0; i <= d; ++i) {
    const int s = hyperplanes[i].side(arr.vertices_[i]);
    if (s == 0) throw PreconditionError("arrangement: all d+1 hyperplanes pass through one point");
    arr.hyperplanes_.push_back(s > 0 ? hyperplanes[i].flipped() : hyperplanes[i]);
  }
  return arr;
}

CornerRegion HyperplaneArrangement::corner(std::size_t i) const {
  CornerRegion c;
  c.index = i;
  c.apex = vertex(i);
  for (std::size_t j = 0; j < hyperplanes_.size(); ++j)
    if (j != i) c.halfspaces.push_back(j);
  return c;
}

bool HyperplaneArrangement::in_central_simplex(const Point& x, bool open) const {
  for (const auto& h : hyperplanes_) {
    const int s = h.side(x);
    if (s > 0 || (open && s == 0)) return false;
  }
  return true;
}

bool HyperplaneArrangement::in_corner(std::size_t i, const Point& x, bool open) const {
  if (i >= hyperplanes_.size()) throw PreconditionError("corner index out of range");
  for (std::size_t j = 0; j < hyperplanes_.size(); ++j) {
    if (j == i) continue;
    const int s = hyperplanes_[j].side(x);
    if (s < 0 || (open && s == 0)) return false;
  }
  return true;
}

HyperplaneArrangement perturb_to_general_position(std::vector<OrientedHyperplane> hyperplanes,
                                                  const std::vector<std::vector<const Point*>>& keep_sides,
                                                  std::uint64_t seed, std::size_t max_retries) {
  if (keep_sides.size() != hyperplanes.size()) throw DimensionMismatch("perturb_to_general_position: side lists");
  try {
    return HyperplaneArrangement::build(hyperplanes);
  } catch (const PreconditionError&) {
  }
  // Moving (normal, offset) by at most m per coordinate changes the value at
  // q by at most m (|q|_1 + 1), so m below slack / (|q|_1 + 1) keeps sides.
  std::vector<Rational> box(hyperplanes.size());
  for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
    bool have = false;
    Rational limit = 1;
    for (const Point* q : keep_sides[i]) {
      const Rational slack = abs(hyperplanes[i].evaluate(*q));
      if (sgn(slack) == 0)
        throw PreconditionError("perturb_to_general_position: a protected point lies on hyperplane " +
                                std::to_string(i));
      Rational l1 = 1;
      for (const auto& c : q->coords()) l1 += abs(c);
      const Rational ratio = slack / l1;
      if (!have || ratio < limit) {
        limit = ratio;
        have = true;
      }
    }
    box[i] = dyadic_floor(limit) / 2;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<OrientedHyperplane> moved;
    for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
      RationalVector normal = hyperplanes[i].normal();
      for (auto& c : normal) c += random_symmetric_rational(rng, box[i]);
      Rational offset = hyperplanes[i].offset() + random_symmetric_rational(rng, box[i]);
      if (std::all_of(normal.begin(), normal.end(), [](const Rational& c) { return sgn(c) == 0; })) break;
      moved.emplace_back(std::move(normal), std::move(offset));
    }
    if (moved.size() != hyperplanes.size()) continue;
    bool sides_kept = true;
    for (std::size_t i = 0; i < moved.size() && sides_kept; ++i)
      for (const Point* q : keep_sides[i])
        if (moved[i].side(*q) != hyperplanes[i].side(*q)) {
          sides_kept = false;
          break;
        }
    if (!sides_kept) continue;
    try {
      return HyperplaneArrangement::build(std::move(moved));
    } catch (const PreconditionError&) {
    }
  }
  throw BudgetError("perturb_to_general_position: no general-position perturbation after " +
                    std::to_string(max_retries) + " attempts");
}

DichotomyResult separation_dichotomy(const Point& p, const HyperplaneArrangement& arr,
                                     const std::vector<std::vector<Point>>& y) {
  const std::size_t d = arr.dim();
  if (p.dim() != d) throw DimensionMismatch("separation_dichotomy: point dimension");
  if (y.size() != d + 1) throw DimensionMismatch("separation_dichotomy: need d+1 point lists");
  std::vector<int> p_side(d + 1);
  for (std::size_t i = 0; i <= d; ++i) {
    p_side[i] = arr.hyperplane(i).side(p);
    if (p_side[i] == 0) throw PreconditionError("separation_dichotomy: p lies on H_" + std::to_string(i));
  }
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t j = 0; j <= d; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < y[j].size(); ++k)
        if (arr.hyperplane(i).side(y[j][k]) != -p_side[i])
          throw PreconditionError("separation_dichotomy: H_" + std::to_string(i) +
                                  " does not strictly separate p from point " + std::to_string(k) + " of Y_" +
                                  std::to_string(j));
    }
  DichotomyResult result;
  if (arr.in_central_simplex(p)) {
    for (std::size_t i = 0; i <= d; ++i)
      for (const auto& pt : y[i])
        if (!arr.in_corner(i, pt, true)) throw InternalError("separation_dichotomy: Y_i not inside C_i");
    result.branch = Branch::Inside;
    return result;
  }
  result.branch = Branch::Outside;
  std::vector<const Point*> all;
  for (const auto& part : y)
    for (const auto& pt : part) all.push_back(&pt);
  if (all.empty()) {
    RationalVector normal(d, Rational(0));
    normal[0] = 1;
    result.separator = OrientedHyperplane(std::move(normal), p[0] + 1);
    return result;
  }
  result.separator = geometry::strict_separation(p, all);
  if (!result.separator) throw InternalError("separation_dichotomy: p outside the central simplex but not separable");
  return result;
}

bool corners_cover_simplex(const HyperplaneArrangement& arr, std::span<const Point> corner_points, const Point& p) {
  const std::size_t d = arr.dim();
  if (corner_points.size() != d + 1) throw DimensionMismatch("corners_cover_simplex: need d+1 corner points");
  for (std::size_t i = 0; i <= d; ++i)
    if (!arr.in_corner(i, corner_points[i]))
      throw PreconditionError("corners_cover_simplex: point " + std::to_string(i) + " is not in its corner region");
  if (!arr.in_central_simplex(p)) throw PreconditionError("corners_cover_simplex: p is not in the central simplex");
  const bool covered = geometry::point_in_simplex(p, corner_points, geometry::SimplexMode::Closed);
  if (!covered) dump_counterexample(arr, corner_points, p);
  return covered;
}

}  // namespace pachsel::arrangements
