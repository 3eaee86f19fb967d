#include "pachsel/cones.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <numbers>

#include "monte_carlo.hpp"
#include "pachsel/errors.hpp"
#include "pachsel/predicates.hpp"

namespace pachsel::cones {
namespace {

// Row-major copy of a small matrix for allocation-free inner loops.
struct DenseInverse {
  std::size_t d = 0;
  std::vector<double> m;

  explicit DenseInverse(const Matrix& inverse) : d(static_cast<std::size_t>(inverse.rows())) {
    m.resize(d * d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) m[r * d + c] = inverse(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  bool nonnegative_image(const double* u) const {
    for (std::size_t r = 0; r < d; ++r) {
      double s = 0;
      for (std::size_t c = 0; c < d; ++c) s += m[r * d + c] * u[c];
      if (s < 0) return false;
    }
    return true;
  }
};

void fill_direction(std::mt19937_64& rng, std::vector<double>& u) {
  std::normal_distribution<double> normal;
  double norm = 0;
  do {
    norm = 0;
    for (auto& x : u) {
      x = normal(rng);
      norm += x * x;
    }
  } while (norm == 0);
  norm = std::sqrt(norm);
  for (auto& x : u) x /= norm;
}

Estimate fraction_estimate(std::uint64_t hits, std::uint64_t samples, double scale = 1.0) {
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {scale * p, scale * std::sqrt(p * (1 - p) / static_cast<double>(samples)), samples};
}

Estimate cone_direction_fraction(const SimplicialCone& cone, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw PreconditionError("sample count must be positive");
  if (!cone.nondegenerate()) throw PreconditionError("cone generators are linearly dependent");
  const DenseInverse inv(cone.generators().inverse());
  std::vector<double> u(cone.dim());
  std::uint64_t hits = 0;
  detail::for_each_sample(samples, seed, [&](std::mt19937_64& rng) {
    fill_direction(rng, u);
    if (inv.nonnegative_image(u.data())) ++hits;
  });
  return fraction_estimate(hits, samples);
}

void require_round_cone_dim(std::size_t d) {
  if (d < 2) throw PreconditionError("round cones need d >= 2");
}

}  // namespace

Vector random_direction(std::mt19937_64& rng, std::size_t d) {
  std::vector<double> u(d);
  fill_direction(rng, u);
  return Eigen::Map<Vector>(u.data(), static_cast<Eigen::Index>(d));
}

Vector random_ball_point(std::mt19937_64& rng, std::size_t d) {
  Vector u = random_direction(rng, d);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return u * std::pow(unit(rng), 1.0 / static_cast<double>(d));
}

SimplicialCone::SimplicialCone(Vector apex, Matrix generators)
    : apex_(std::move(apex)), generators_(std::move(generators)) {
  const auto d = apex_.size();
  if (d == 0 || generators_.rows() != d || generators_.cols() != d)
    throw DimensionMismatch("simplicial cone needs d generators in R^d");
  for (Eigen::Index j = 0; j < d; ++j) {
    const double norm = generators_.col(j).norm();
    if (!(norm > 0) || !std::isfinite(norm)) throw PreconditionError("cone generator must be a nonzero finite vector");
    generators_.col(j) /= norm;
  }
  Eigen::FullPivLU<Matrix> lu(generators_);
  nondegenerate_ = lu.isInvertible() && std::fabs(generators_.determinant()) > 1e-12;
  if (nondegenerate_) inverse_ = lu.inverse();
}

SimplicialCone SimplicialCone::at_origin(Matrix generators) {
  const auto d = generators.rows();
  return SimplicialCone(Vector::Zero(d), std::move(generators));
}

bool SimplicialCone::acute() const {
  const auto d = generators_.cols();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j)
      if (!(generators_.col(i).dot(generators_.col(j)) > 0)) return false;
  return true;
}

bool SimplicialCone::contains_direction(const Vector& u) const {
  if (!nondegenerate_) throw PreconditionError("cone generators are linearly dependent");
  return ((inverse_ * u).array() >= 0).all();
}

bool SimplicialCone::contains(const Vector& x) const { return contains_direction(x - apex_); }

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw DimensionMismatch("simplex needs d+1 vertices");
  const std::size_t d = vertices_.front().dim();
  if (vertices_.size() != d + 1) throw DimensionMismatch("simplex needs d+1 vertices in R^d");
  for (const auto& v : vertices_) {
    if (v.dim() != d) throw DimensionMismatch("simplex vertices of mixed dimension");
    Vector a(static_cast<Eigen::Index>(d));
    for (std::size_t k = 0; k < d; ++k) a[static_cast<Eigen::Index>(k)] = v.approx()[k];
    approx_.push_back(std::move(a));
  }
}

Simplex Simplex::from_doubles(const std::vector<Vector>& vertices) {
  std::vector<Point> pts;
  for (const auto& v : vertices) pts.push_back(Point::from_doubles(std::span<const double>(v.data(), static_cast<std::size_t>(v.size()))));
  return Simplex(std::move(pts));
}

bool Simplex::nondegenerate() const { return geometry::orientation(std::span<const Point>(vertices_)) != 0; }

SimplicialCone Simplex::vertex_cone(std::size_t i) const {
  const std::size_t d = dim();
  Matrix g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  Eigen::Index col = 0;
  for (std::size_t j = 0; j <= d; ++j)
    if (j != i) g.col(col++) = approx_[j] - approx_[i];
  return SimplicialCone::at_origin(std::move(g));
}

double unit_ball_volume(std::size_t d) {
  const double h = static_cast<double>(d) / 2.0;
  return std::pow(std::numbers::pi, h) / std::tgamma(h + 1.0);
}

Estimate solid_angle_mc(const Simplex& simplex, std::size_t vertex, std::uint64_t samples, std::uint64_t seed) {
  if (vertex > simplex.dim()) throw PreconditionError("vertex index out of range");
  if (!simplex.nondegenerate()) throw PreconditionError("solid angle of a degenerate simplex");
  return cone_direction_fraction(simplex.vertex_cone(vertex), samples, seed);
}

MsaEstimate msa_mc(const Simplex& simplex, std::uint64_t samples_per_vertex, std::uint64_t seed) {
  if (!simplex.nondegenerate()) throw PreconditionError("solid angle of a degenerate simplex");
  MsaEstimate out;
  for (std::size_t i = 0; i <= simplex.dim(); ++i) {
    out.per_vertex.push_back(
        cone_direction_fraction(simplex.vertex_cone(i), samples_per_vertex, detail::splitmix64(seed + i)));
    if (i == 0 || out.per_vertex[i].mean < out.value) {
      out.value = out.per_vertex[i].mean;
      out.argmin = i;
      out.std_error = out.per_vertex[i].std_error;
    }
  }
  return out;
}

SimplicialCone polar_cone(const SimplicialCone& cone) {
  if (!cone.apex().isZero(0)) throw PreconditionError("polar cone needs the apex at the origin");
  if (!cone.nondegenerate()) throw PreconditionError("cone generators are linearly dependent");
  Matrix w = -cone.generators().transpose().inverse();
  return SimplicialCone::at_origin(std::move(w));
}

Estimate restricted_volume_mc(const SimplicialCone& cone, std::uint64_t samples, std::uint64_t seed) {
  if (!cone.apex().isZero(0)) throw PreconditionError("restricted volume needs the apex at the origin");
  Estimate e = cone_direction_fraction(cone, samples, seed);
  const double beta = unit_ball_volume(cone.dim());
  return {e.mean * beta, e.std_error * beta, e.samples};
}

NormalFanReport normal_fan_cover_check(const Simplex& simplex, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw PreconditionError("sample count must be positive");
  if (!simplex.nondegenerate()) throw PreconditionError("normal fan of a degenerate simplex");
  const std::size_t d = simplex.dim();
  // edges[i][j] = v_j - v_i; x is in the polar vertex cone at i iff
  // x . (v_j - v_i) <= 0 for every j.
  std::vector<std::vector<double>> verts(d + 1, std::vector<double>(d));
  for (std::size_t i = 0; i <= d; ++i)
    for (std::size_t k = 0; k < d; ++k) verts[i][k] = simplex.approx(i)[static_cast<Eigen::Index>(k)];
  std::vector<std::uint64_t> counts(d + 1, 0);
  std::uint64_t covered = 0;
  std::vector<double> u(d), dots(d + 1);
  detail::for_each_sample(samples, seed, [&](std::mt19937_64& rng) {
    fill_direction(rng, u);
    double scale = 0;
    for (std::size_t i = 0; i <= d; ++i) {
      double s = 0;
      for (std::size_t k = 0; k < d; ++k) s += u[k] * verts[i][k];
      dots[i] = s;
      scale = std::max(scale, std::fabs(s));
    }
    const auto best = static_cast<std::size_t>(std::max_element(dots.begin(), dots.end()) - dots.begin());
    ++counts[best];
    const double tol = 1e-12 * (1 + scale);
    for (std::size_t i = 0; i <= d; ++i) {
      bool inside = true;
      for (std::size_t j = 0; j <= d && inside; ++j) {
        if (j == i) continue;
        double s = 0;
        for (std::size_t k = 0; k < d; ++k) s += u[k] * (verts[j][k] - verts[i][k]);
        inside = s <= tol;
      }
      if (inside) {
        ++covered;
        break;
      }
    }
  });
  NormalFanReport r;
  r.samples = samples;
  r.coverage = static_cast<double>(covered) / static_cast<double>(samples);
  for (std::size_t i = 0; i <= d; ++i) {
    const auto e = fraction_estimate(counts[i], samples);
    r.fractions.push_back(e.mean);
    if (i == 0 || e.mean > r.max_fraction) {
      r.max_fraction = e.mean;
      r.argmax = i;
      r.max_std_error = e.std_error;
    }
  }
  return r;
}

double round_cone_ball_fraction(std::size_t d, double half_angle) {
  require_round_cone_dim(d);
  if (!(half_angle >= 0) || half_angle > std::numbers::pi) throw PreconditionError("half-angle must lie in [0, pi]");
  const double half_pi = std::numbers::pi / 2;
  const double t = std::min(half_angle, std::numbers::pi - half_angle);
  const double s = std::sin(t);
  const double cap = 0.5 * boost::math::ibeta((static_cast<double>(d) - 1) / 2, 0.5, s * s);
  return half_angle <= half_pi ? cap : 1 - cap;
}

double round_cone_half_angle(std::size_t d, double w) {
  require_round_cone_dim(d);
  const double beta = unit_ball_volume(d);
  if (!(w > 0 && w < beta)) throw PreconditionError("restricted volume must lie in (0, beta_d)");
  const double target = w / beta;
  double lo = 0, hi = std::numbers::pi;
  while (hi - lo > 1e-10) {
    const double mid = (lo + hi) / 2;
    (round_cone_ball_fraction(d, mid) < target ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

double round_cone_gamma(std::size_t d, double w) { return std::cos(round_cone_half_angle(d, w)); }

double round_cone_polar_volume_bound(std::size_t d, double w) {
  require_round_cone_dim(d);
  if (!(w > 0 && w < unit_ball_volume(d) / 2)) throw PreconditionError("w must lie in (0, beta_d / 2)");
  const double gamma = std::max(0.0, round_cone_gamma(d, w));
  return std::pow(gamma, static_cast<double>(d - 1)) * unit_ball_volume(d - 1);
}

double round_cone_polar_volume(std::size_t d, double w) {
  const double theta = round_cone_half_angle(d, w);
  return unit_ball_volume(d) * round_cone_ball_fraction(d, std::max(0.0, std::numbers::pi / 2 - theta));
}

Estimate round_cone_volume_mc(std::size_t d, double half_angle, std::uint64_t samples, std::uint64_t seed) {
  require_round_cone_dim(d);
  if (samples == 0) throw PreconditionError("sample count must be positive");
  const double c = std::cos(half_angle);
  std::vector<double> u(d);
  std::uint64_t hits = 0;
  detail::for_each_sample(samples, seed, [&](std::mt19937_64& rng) {
    fill_direction(rng, u);
    if (u[0] >= c) ++hits;
  });
  return fraction_estimate(hits, samples, unit_ball_volume(d));
}

SantaloCheck blaschke_santalo_check(const SimplicialCone& cone, std::uint64_t samples, std::uint64_t seed) {
  const std::size_t d = cone.dim();
  require_round_cone_dim(d);
  SantaloCheck out;
  out.cone_volume = restricted_volume_mc(cone, samples, detail::splitmix64(seed));
  out.polar_volume = restricted_volume_mc(polar_cone(cone), samples, detail::splitmix64(seed + 1));
  const double beta = unit_ball_volume(d);
  const double w = std::clamp(out.cone_volume.mean, beta * 1e-12, beta / 2 * (1 - 1e-12));
  const double theta = round_cone_half_angle(d, w);
  out.round_polar_volume = round_cone_polar_volume(d, w);
  out.round_polar_volume_mc =
      round_cone_volume_mc(d, std::max(0.0, std::numbers::pi / 2 - theta), samples, detail::splitmix64(seed + 2));
  out.cylinder_bound = round_cone_polar_volume_bound(d, w);
  const double sigma = std::hypot(out.polar_volume.std_error, out.round_polar_volume_mc.std_error);
  out.passed = out.polar_volume.mean <= out.round_polar_volume_mc.mean + 3 * sigma &&
               out.round_polar_volume <= out.cylinder_bound * (1 + 1e-9) + 1e-12;
  return out;
}

AcuteDeviationReport acute_cone_admissible_deviation(const SimplicialCone& base, const SimplicialCone& perturbed,
                                                     std::uint64_t samples, std::uint64_t seed) {
  if (base.dim() != perturbed.dim()) throw DimensionMismatch("cones of different dimension");
  if (!base.acute() || !perturbed.acute()) throw PreconditionError("cone is not acute");
  const std::size_t d = base.dim();
  AcuteDeviationReport r;
  r.samples = samples;
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d); ++j)
    r.delta = std::max(r.delta, (base.generators().col(j) - perturbed.generators().col(j)).norm());
  r.bound = 2.0 * static_cast<double>(d * d) * r.delta;
  Vector lambda(static_cast<Eigen::Index>(d));
  detail::for_each_sample(samples, seed, [&](std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    for (Eigen::Index j = 0; j < lambda.size(); ++j) lambda[j] = expo(rng);
    lambda /= lambda.sum();
    const Vector v = (base.generators() * lambda).normalized();
    const Vector vp = (perturbed.generators() * lambda).normalized();
    r.observed_max = std::max(r.observed_max, (v - vp).norm());
  });
  return r;
}

}  // namespace pachsel::cones
