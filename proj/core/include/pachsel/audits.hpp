#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pachsel/cones.hpp"
#include "pachsel/generic_config.hpp"
#include "pachsel/pipeline.hpp"

namespace pachsel::constructions {

struct CornerVolumeReport {
  // Vol(C_i cap B^d) per corner region of the separating arrangement.
  std::vector<cones::Estimate> volumes;
  std::size_t min_index = 0;
  double min_volume = 0;
  cones::MsaEstimate msa;
  double bound = 0;  // 2^d msa beta_d
  double sigma = 0;  // combined standard error of min_volume - bound
  bool passed = false;
};

// Builds the separating arrangement of a generic configuration inside the
// unit ball and compares the smallest restricted corner volume with
// 2^d msa(central simplex) beta_d, allowing 3 sigma. Throws
// PreconditionError when a selected point or p is outside the open ball.
CornerVolumeReport corner_volume_audit(const LabeledPointSet& set, const selection::GenericPachConfiguration& cfg,
                                       std::uint64_t samples, std::uint64_t seed);

struct UpperBoundReport {
  std::size_t dim = 0;
  Rational cube_side;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::vector<double> fractions;  // |Y_i| / n after shrinking
  double min_fraction = 0;
  double g = 0;                   // 2^d u(d)
  bool g_clamped = false;
  CornerVolumeReport audit;
  // Vol(C_l cap B^d) / beta_d for l = audit.min_index, and its error.
  double volume_ratio = 0;
  double volume_ratio_sigma = 0;
  // fractions[l] <= volume_ratio + 3 sigma.
  bool count_within_volume = false;
};

// Grid-ball instance -> pipeline -> shrink to a generic configuration ->
// corner-volume audit, reporting achieved fractions next to g(d).
UpperBoundReport upper_bound_witness(std::size_t dim, const Rational& cube_side, std::uint64_t seed,
                                     const selection::PipelineParams& params, std::uint64_t samples = 1'000'000);

}  // namespace pachsel::constructions
