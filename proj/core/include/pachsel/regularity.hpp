#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pachsel/hypergraph.hpp"

namespace pachsel::selection {

struct RegularityParams {
  double epsilon = 0.25;  // in (0, 1/2]
  double beta = 0.0;      // density floor; must not exceed the start density
  // Exhaustive witness search when C(s, t)^(k-1) <= budget; otherwise
  // `sampled_trials` randomized greedy attempts.
  std::uint64_t budget = 1'000'000;
  std::uint64_t sampled_trials = 20'000;
  std::uint64_t seed = 0;
};

enum class WitnessSearch { Exhaustive, Sampled };

struct RegularityStep {
  std::size_t s = 0;
  double density = 0;
  std::string move;  // "block" or "peel"
};

struct RegularityResult {
  std::vector<IndexSet> parts;
  std::size_t s = 0;
  double density = 0;
  WitnessSearch search = WitnessSearch::Exhaustive;
  std::uint64_t trials = 0;  // randomized attempts in the final search
  std::vector<RegularityStep> steps;

  // "exhaustive-clean" or "sampled-clean(<trials>)".
  std::string witness_report() const;
};

// Witness sizes ceil(epsilon * s) (at least 1).
std::size_t witness_size(double epsilon, std::size_t s);

// Looks for t-subsets W_i of the parts with no edge among them.
struct WitnessOutcome {
  std::optional<std::vector<IndexSet>> witness;
  WitnessSearch search = WitnessSearch::Exhaustive;
  std::uint64_t trials = 0;
};
WitnessOutcome find_empty_subtuple(const RainbowHypergraph& h, const std::vector<IndexSet>& parts, std::size_t t,
                                   const RegularityParams& params, std::uint64_t seed);

// One densification step after an edgeless witness tuple was found: the
// denser of (a) the best tuple of t-blocks (each part cut into the witness
// and further blocks of its size) other than the witness tuple itself, and
// (b) the parts with a minimum-degree vertex peeled from each. The result has
// equal part sizes below s and density at least that of `parts`.
std::vector<IndexSet> densify(const RainbowHypergraph& h, const std::vector<IndexSet>& parts,
                              const std::vector<IndexSet>& witness, RegularityStep* step = nullptr);

// Greedy weak regularity: repeat witness search and densification until the
// search comes back clean. Starts from `start` (default: every full color).
// Throws PreconditionError if the start density is below params.beta or the
// part sizes differ.
RegularityResult weak_regularity(const RainbowHypergraph& h, const RegularityParams& params,
                                 std::optional<std::vector<IndexSet>> start = std::nullopt);

}  // namespace pachsel::selection
