#include "pachsel/constructions.hpp"

#include <cmath>
#include <random>

#include "monte_carlo.hpp"
#include "pachsel/cones.hpp"
#include "pachsel/errors.hpp"
#include "pachsel/predicates.hpp"

namespace pachsel::constructions {
namespace {

struct Cube {
  std::vector<long> corner;  // lower corner in units of eps
};

Rational squared_distance_to_cube(const Cube& cube, const Rational& eps) {
  Rational s = 0;
  for (long k : cube.corner) {
    const Rational lo = eps * k;
    const Rational hi = eps * (k + 1);
    if (lo > 0) s += lo * lo;
    else if (hi < 0) s += hi * hi;
  }
  return s;
}

// Cubes whose closure is within distance < 1 of the origin, i.e. meeting
// the open ball, plus the number that also reach outside the closed ball.
std::vector<Cube> cubes_meeting_ball(std::size_t d, const Rational& eps, std::size_t& boundary) {
  const Rational inv = 1 / eps;
  mpz_class ceil_inv;
  mpz_cdiv_q(ceil_inv.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
  const long m = ceil_inv.get_si();
  std::vector<Cube> out;
  boundary = 0;
  Cube c{std::vector<long>(d, -m)};
  for (;;) {
    if (squared_distance_to_cube(c, eps) < 1) {
      Rational far = 0;
      for (long k : c.corner) {
        const Rational a = eps * k, b = eps * (k + 1);
        far += std::max(a * a, b * b);
      }
      if (far > 1) ++boundary;
      out.push_back(c);
    }
    std::size_t j = 0;
    while (j < d && ++c.corner[j] == m) c.corner[j++] = -m;
    if (j == d) break;
  }
  return out;
}

Point nearest_point(const Cube& cube, const Rational& eps) {
  RationalVector x;
  for (long k : cube.corner) {
    const Rational lo = eps * k, hi = eps * (k + 1);
    x.push_back(lo > 0 ? lo : (hi < 0 ? hi : Rational(0)));
  }
  return Point(std::move(x));
}

bool strictly_inside(const Point& x, const Cube& cube, const Rational& eps) {
  if (squared_norm(x.coords()) >= 1) return false;
  for (std::size_t j = 0; j < x.dim(); ++j)
    if (x[j] <= eps * cube.corner[j] || x[j] >= eps * (cube.corner[j] + 1)) return false;
  return true;
}

// Random point of open cube cap open ball: walk from the cube point nearest
// the origin towards a uniform interior point, halving until inside the ball.
Point sample_in_cube(std::mt19937_64& rng, const Cube& cube, const Rational& eps) {
  const Point near = nearest_point(cube, eps);
  RationalVector u;
  for (long k : cube.corner) {
    Rational lo = eps * k, hi = eps * (k + 1);
    Rational v;
    do v = random_rational_between(rng, lo, hi);
    while (v == lo);
    u.push_back(v);
  }
  const Point target(std::move(u));
  Rational lambda = random_rational_between(rng, Rational(1, 2), Rational(1));
  for (;;) {
    Point x = near + lambda * (target - near);
    if (strictly_inside(x, cube, eps)) return x;
    lambda /= 2;
  }
}

}  // namespace

GridBallResult generate_grid_ball(const GridBallConfig& cfg) {
  const std::size_t d = cfg.dim;
  const Rational& eps = cfg.cube_side;
  if (d == 0) throw PreconditionError("generate_grid_ball: dimension must be positive");
  if (eps <= 0 || eps > 2) throw PreconditionError("generate_grid_ball: cube side must lie in (0, 2]");
  const Rational bound = cfg.perturbation.value_or(eps / 2000);
  if (bound <= 0 || bound >= eps / 1000)
    throw PreconditionError("generate_grid_ball: perturbation must lie in (0, eps/1000)");

  GridBallResult result;
  const auto cubes = cubes_meeting_ball(d, eps, result.boundary_cubes);
  if (cubes.empty()) throw PreconditionError("generate_grid_ball: no cube meets the ball");
  result.cubes = cubes.size();
  const double e = to_double(eps);
  const double beta = cones::unit_ball_volume(d);
  result.lower = beta / std::pow(e, static_cast<double>(d));
  result.upper = result.lower * std::pow(1 + e * std::sqrt(static_cast<double>(d)), static_cast<double>(d));

  std::mt19937_64 rng(detail::splitmix64(cfg.seed));
  std::vector<std::vector<Point>> colors(d + 1);
  for (auto& col : colors)
    for (const auto& cube : cubes) col.push_back(sample_in_cube(rng, cube, eps));

  for (std::size_t attempt = 1; attempt <= cfg.max_retries + 1; ++attempt) {
    result.attempts = attempt;
    LabeledPointSet set(d, colors);
    const auto report = geometry::satisfies_condition_G(set, cfg.condition_g_cap);
    if (report.verdict != geometry::Verdict::Fails) {
      result.set = std::move(set);
      result.condition_g = report.verdict;
      return result;
    }
    for (auto& col : colors)
      for (std::size_t k = 0; k < col.size(); ++k) {
        for (;;) {
          RationalVector x(col[k].coords().begin(), col[k].coords().end());
          for (auto& c : x) c += random_symmetric_rational(rng, bound);
          Point moved(std::move(x));
          if (strictly_inside(moved, cubes[k], eps)) {
            col[k] = std::move(moved);
            break;
          }
        }
      }
  }
  throw BudgetError("generate_grid_ball: condition (G) still fails after " + std::to_string(cfg.max_retries) +
                    " perturbations");
}

LabeledPointSet uniform_ball(std::size_t dim, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(detail::splitmix64(seed));
  std::vector<std::vector<Point>> colors(dim + 1);
  for (auto& col : colors)
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = cones::random_ball_point(rng, dim);
      col.push_back(Point::from_doubles(std::span<const double>(v.data(), dim)));
    }
  return LabeledPointSet(dim, std::move(colors), false);
}

LabeledPointSet gaussian(std::size_t dim, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(detail::splitmix64(seed));
  std::normal_distribution<double> normal;
  std::vector<std::vector<Point>> colors(dim + 1);
  std::vector<double> v(dim);
  for (auto& col : colors)
    for (std::size_t k = 0; k < n; ++k) {
      for (auto& x : v) x = normal(rng);
      col.push_back(Point::from_doubles(v));
    }
  return LabeledPointSet(dim, std::move(colors), false);
}

void WeightedPointMeasure::validate() const {
  if (colors.size() != dim + 1) throw PreconditionError("measure: need d+1 colors");
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i].empty()) throw PreconditionError("measure: color " + std::to_string(i) + " is empty");
    Rational total = 0;
    for (const auto& a : colors[i]) {
      if (a.point.dim() != dim) throw DimensionMismatch("measure: point dimension mismatch");
      if (a.weight <= 0) throw PreconditionError("measure: weights must be positive");
      total += a.weight;
    }
    total.canonicalize();
    if (total != 1) throw PreconditionError("measure: weights of color " + std::to_string(i) + " sum to " +
                                            to_string(total));
  }
}

mpz_class WeightedPointMeasure::common_denominator() const {
  mpz_class s = 1;
  for (const auto& col : colors)
    for (const auto& a : col) {
      Rational w = a.weight;
      w.canonicalize();
      s = lcm(s, w.get_den());
    }
  return s;
}

LabeledPointSet discretize_measure(const WeightedPointMeasure& measure, const Rational& spread, std::uint64_t seed,
                                   std::size_t max_retries) {
  measure.validate();
  if (spread <= 0) throw PreconditionError("discretize_measure: spread must be positive");
  const std::size_t d = measure.dim;
  const mpz_class s = measure.common_denominator();
  if (!s.fits_ulong_p() || s > 1'000'000) throw BudgetError("discretize_measure: common denominator too large");
  // Each coordinate moves less than spread/(d+1), so the distance is below
  // sqrt(d) spread/(d+1) < spread.
  const Rational box = spread / static_cast<long>(d + 1);
  const Rational spread2 = spread * spread;
  std::mt19937_64 rng(detail::splitmix64(seed));
  for (std::size_t attempt = 0; attempt <= max_retries; ++attempt) {
    std::vector<std::vector<Point>> colors(d + 1);
    for (std::size_t i = 0; i <= d; ++i)
      for (const auto& a : measure.colors[i]) {
        Rational rq = a.weight * s;
        rq.canonicalize();
        const mpz_class r = rq.get_num();
        for (unsigned long c = 0; c < r.get_ui(); ++c) {
          RationalVector x(a.point.coords().begin(), a.point.coords().end());
          for (auto& v : x) v += random_symmetric_rational(rng, box);
          Point q(std::move(x));
          if (squared_norm((q - a.point).coords()) >= spread2)
            throw InternalError("discretize_measure: displacement exceeded the spread");
          colors[i].push_back(std::move(q));
        }
      }
    LabeledPointSet set(d, std::move(colors));
    if (geometry::in_general_position(set)) return set;
  }
  throw BudgetError("discretize_measure: no general-position sample after " + std::to_string(max_retries) +
                    " retries");
}

}  // namespace pachsel::constructions
