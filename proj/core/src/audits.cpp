#include "pachsel/audits.hpp"

#include <cmath>

#include "monte_carlo.hpp"
#include "pachsel/bounds.hpp"
#include "pachsel/constructions.hpp"
#include "pachsel/errors.hpp"

namespace pachsel::constructions {

CornerVolumeReport corner_volume_audit(const LabeledPointSet& set, const selection::GenericPachConfiguration& cfg,
                                       std::uint64_t samples, std::uint64_t seed) {
  const std::size_t d = set.dim();
  if (samples == 0) throw PreconditionError("corner_volume_audit: sample count must be positive");
  if (squared_norm(cfg.p.coords()) >= 1) throw PreconditionError("corner_volume_audit: p is outside the unit ball");
  for (std::size_t i = 0; i < cfg.y.size(); ++i)
    for (std::size_t k : cfg.y[i])
      if (squared_norm(set.color(i).at(k).coords()) >= 1)
        throw PreconditionError("corner_volume_audit: a selected point is outside the unit ball");

  const auto arr = selection::separating_arrangement(set, cfg, seed);
  // Double copies of the hyperplanes: C_i is {x : h_j(x) >= 0 for j != i}.
  std::vector<std::vector<double>> normals(d + 1);
  std::vector<double> offsets(d + 1);
  for (std::size_t j = 0; j <= d; ++j) {
    for (const auto& c : arr.hyperplane(j).normal()) normals[j].push_back(to_double(c));
    offsets[j] = to_double(arr.hyperplane(j).offset());
  }
  std::vector<std::uint64_t> hits(d + 1, 0);
  std::vector<double> values(d + 1);
  detail::for_each_sample(samples, seed, [&](std::mt19937_64& rng) {
    const auto x = cones::random_ball_point(rng, d);
    // The all-nonnegative region is empty, so x lies in C_i exactly when
    // h_i is its only negative value.
    std::size_t negatives = 0, neg_index = 0;
    for (std::size_t j = 0; j <= d; ++j) {
      double v = -offsets[j];
      for (std::size_t k = 0; k < d; ++k) v += normals[j][k] * x[static_cast<Eigen::Index>(k)];
      if (v < 0) {
        ++negatives;
        neg_index = j;
      }
    }
    if (negatives == 1) ++hits[neg_index];
  });

  CornerVolumeReport r;
  const double beta = cones::unit_ball_volume(d);
  r.min_volume = INFINITY;
  for (std::size_t i = 0; i <= d; ++i) {
    const double f = static_cast<double>(hits[i]) / static_cast<double>(samples);
    r.volumes.push_back({beta * f, beta * std::sqrt(f * (1 - f) / static_cast<double>(samples)), samples});
    if (r.volumes.back().mean < r.min_volume) {
      r.min_volume = r.volumes.back().mean;
      r.min_index = i;
    }
  }
  r.msa = cones::msa_mc(cones::Simplex(arr.vertices()), samples, detail::splitmix64(seed + 1));
  const double scale = std::ldexp(beta, static_cast<int>(d));
  r.bound = scale * r.msa.value;
  r.sigma = std::hypot(r.volumes[r.min_index].std_error, scale * r.msa.std_error);
  r.passed = r.min_volume <= r.bound + 3 * r.sigma;
  return r;
}

UpperBoundReport upper_bound_witness(std::size_t dim, const Rational& cube_side, std::uint64_t seed,
                                     const selection::PipelineParams& params, std::uint64_t samples) {
  UpperBoundReport out;
  out.dim = dim;
  out.cube_side = cube_side;
  out.seed = seed;
  GridBallConfig gcfg;
  gcfg.dim = dim;
  gcfg.cube_side = cube_side;
  gcfg.seed = seed;
  const auto grid = generate_grid_ball(gcfg);
  out.n = grid.cubes;

  auto pp = params;
  pp.seed = seed;
  const auto cert = selection::run_pipeline(grid.set, pp);
  selection::ShrinkOptions sopts;
  sopts.seed = seed;
  const auto shrunk = selection::shrink_to_generic(grid.set, cert.y, cert.p, sopts);
  out.audit = corner_volume_audit(grid.set, shrunk.config, samples, seed);

  out.min_fraction = 1;
  for (const auto& y : shrunk.config.y) {
    out.fractions.push_back(static_cast<double>(y.size()) / static_cast<double>(out.n));
    out.min_fraction = std::min(out.min_fraction, out.fractions.back());
  }
  out.g = std::ldexp(cones::msa_upper_bound(dim), static_cast<int>(dim));
  out.g_clamped = cones::msa_upper_bound_clamped(dim);
  const double beta = cones::unit_ball_volume(dim);
  const auto& v = out.audit.volumes[out.audit.min_index];
  out.volume_ratio = v.mean / beta;
  out.volume_ratio_sigma = v.std_error / beta;
  out.count_within_volume = out.fractions[out.audit.min_index] <= out.volume_ratio + 3 * out.volume_ratio_sigma;
  return out;
}

}  // namespace pachsel::constructions
