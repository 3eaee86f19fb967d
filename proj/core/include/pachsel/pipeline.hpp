#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "pachsel/certificate.hpp"
#include "pachsel/deep_point.hpp"
#include "pachsel/point_set.hpp"

namespace pachsel::selection {

struct PipelineParams {
  std::uint64_t seed = 0;
  // Defaults to 2^-d.
  std::optional<double> epsilon;
  std::uint64_t rainbow_budget = kDefaultRainbowBudget;
  std::size_t random_candidates = 200;
  std::vector<Point> extra_candidates;
  std::uint64_t witness_budget = 1'000'000;
  std::uint64_t sampled_trials = 20'000;
  // Exhaustive verification when the Y_i span at most this many simplices;
  // arrangement-only verification above it.
  std::uint64_t verify_budget = 50'000'000;
  bool verify = true;
  std::string input_hash;
};

// Deep point -> anchor perturbation -> hypergraph -> weak regularity ->
// few separations -> certificate. When few separations ends in the
// "contains none" branch, its output parts are an edgeless sub-tuple, which
// feeds one more densification step before the loop resumes; the part size
// drops every time, so the loop always ends in the "contains all" branch.
// Requires equal color sizes and a point set in general position. Errors are
// rethrown as StageError tagged with the stage name.
PachCertificate run_pipeline(const LabeledPointSet& set, const PipelineParams& params = {});

}  // namespace pachsel::selection
