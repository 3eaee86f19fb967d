#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pachsel/point.hpp"

namespace pachsel::cones {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Monte Carlo estimate with its binomial standard error.
struct Estimate {
  double mean = 0;
  double std_error = 0;
  std::uint64_t samples = 0;
};

// apex + cone{g_1, ..., g_d}; generators are stored as unit-norm columns.
class SimplicialCone {
 public:
  SimplicialCone(Vector apex, Matrix generators);
  static SimplicialCone at_origin(Matrix generators);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(apex_.size()); }
  const Vector& apex() const noexcept { return apex_; }
  const Matrix& generators() const noexcept { return generators_; }
  bool nondegenerate() const noexcept { return nondegenerate_; }
  // All pairwise generator dot products positive.
  bool acute() const;
  // x - apex is a nonnegative combination of the generators. Requires a
  // nondegenerate cone.
  bool contains(const Vector& x) const;
  // Same test for a direction (apex ignored).
  bool contains_direction(const Vector& u) const;

 private:
  Vector apex_;
  Matrix generators_;
  Matrix inverse_;
  bool nondegenerate_ = false;
};

// d+1 vertices in R^d with exact coordinates and double copies for sampling.
class Simplex {
 public:
  explicit Simplex(std::vector<Point> vertices);
  static Simplex from_doubles(const std::vector<Vector>& vertices);

  std::size_t dim() const noexcept { return vertices_.empty() ? 0 : vertices_.front().dim(); }
  const Point& vertex(std::size_t i) const { return vertices_.at(i); }
  const Vector& approx(std::size_t i) const { return approx_.at(i); }
  // Exact orientation test.
  bool nondegenerate() const;
  // Cone of the simplex at vertex i, translated to the origin.
  SimplicialCone vertex_cone(std::size_t i) const;

 private:
  std::vector<Point> vertices_;
  std::vector<Vector> approx_;
};

// Volume of the unit d-ball, pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(std::size_t d);

// Fraction of uniformly random directions lying in the cone of the simplex at
// vertex i. Throws PreconditionError for degenerate simplices.
Estimate solid_angle_mc(const Simplex& simplex, std::size_t vertex, std::uint64_t samples, std::uint64_t seed);

struct MsaEstimate {
  double value = 0;
  std::size_t argmin = 0;
  double std_error = 0;
  std::vector<Estimate> per_vertex;
};

// Minimum over vertices of solid_angle_mc; ties go to the lowest index.
MsaEstimate msa_mc(const Simplex& simplex, std::uint64_t samples_per_vertex, std::uint64_t seed);

// {x : x . y <= 0 for all y in C}, generated by the columns of -(V^T)^{-1}
// (normalized). Throws PreconditionError for dependent generators or an apex
// away from the origin.
SimplicialCone polar_cone(const SimplicialCone& cone);

// Vol(C cap B^d) = beta_d * (fraction of directions in C); apex must be 0.
Estimate restricted_volume_mc(const SimplicialCone& cone, std::uint64_t samples, std::uint64_t seed);

struct NormalFanReport {
  // Fraction of sampled directions found in at least one polar vertex cone,
  // each tested independently of the argmax rule.
  double coverage = 0;
  // Share of directions whose argmax_i x . v_i is vertex i.
  std::vector<double> fractions;
  double max_fraction = 0;
  std::size_t argmax = 0;
  double max_std_error = 0;
  std::uint64_t samples = 0;
};

NormalFanReport normal_fan_cover_check(const Simplex& simplex, std::uint64_t samples, std::uint64_t seed);

// Share of the unit ball inside a round cone with the given half-angle
// (radians, in [0, pi]); uses the regularized incomplete beta function.
double round_cone_ball_fraction(std::size_t d, double half_angle);

// Half-angle of the round cone with restricted volume w, by bisection
// (tolerance 1e-10). w must lie in (0, beta_d).
double round_cone_half_angle(std::size_t d, double w);

// Distance from the origin of the hyperplane through the boundary sphere of
// the round cone of restricted volume w (the cosine of its half-angle).
double round_cone_gamma(std::size_t d, double w);

// gamma^{d-1} * beta_{d-1}: a cylinder bound on the restricted volume of the
// polar of the round cone with restricted volume w. w in (0, beta_d / 2).
double round_cone_polar_volume_bound(std::size_t d, double w);

// Exact restricted volume of the polar of that round cone (itself round, with
// the complementary half-angle).
double round_cone_polar_volume(std::size_t d, double w);

// Monte Carlo restricted volume of the round cone around e_1.
Estimate round_cone_volume_mc(std::size_t d, double half_angle, std::uint64_t samples, std::uint64_t seed);

struct SantaloCheck {
  Estimate cone_volume;
  Estimate polar_volume;
  double round_polar_volume = 0;
  Estimate round_polar_volume_mc;
  double cylinder_bound = 0;
  bool passed = false;
};

// Compares Vol'(C*) with the polar of the round cone of the same restricted
// volume as C, allowing three combined standard errors.
SantaloCheck blaschke_santalo_check(const SimplicialCone& cone, std::uint64_t samples, std::uint64_t seed);

struct AcuteDeviationReport {
  double delta = 0;          // max_i |g_i - g'_i|
  double bound = 0;          // 2 d^2 delta
  double observed_max = 0;   // max |v - v'| over sampled admissible vectors
  std::uint64_t samples = 0;
};

// Samples admissible unit vectors v' of `perturbed` (uniform convex weights),
// maps each to the vector v of `base` with the same weights and reports the
// largest |v - v'|. Both cones must be acute and of equal dimension.
AcuteDeviationReport acute_cone_admissible_deviation(const SimplicialCone& base, const SimplicialCone& perturbed,
                                                     std::uint64_t samples, std::uint64_t seed);

// Uniform random direction on the unit sphere (normalized Gaussian).
Vector random_direction(std::mt19937_64& rng, std::size_t d);

// Uniform random point in the unit ball.
Vector random_ball_point(std::mt19937_64& rng, std::size_t d);

}  // namespace pachsel::cones
