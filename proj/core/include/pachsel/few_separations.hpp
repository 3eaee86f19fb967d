#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pachsel/arrangement.hpp"
#include "pachsel/point_set.hpp"

namespace pachsel::selection {

enum class FewSeparationsBranch { AllContain, NoneContain };

struct FewSeparationsOptions {
  std::uint64_t seed = 0;
  std::size_t max_retries = 50;
  // Exhaustive general-position check of the parts plus p before starting.
  bool check_general_position = true;
};

struct SeparationRound {
  std::vector<std::size_t> sizes_before;
  std::vector<std::size_t> sizes_after;
  bool anchor_on_cut = false;  // the cut had to be tilted off p
};

struct FewSeparationsResult {
  std::vector<IndexSet> y;
  arrangements::HyperplaneArrangement arrangement;
  FewSeparationsBranch branch = FewSeparationsBranch::AllContain;
  std::vector<SeparationRound> rounds;
};

// d+1 rounds of ham-sandwich halving: round j cuts the current parts other
// than j, tilts the cut off p if needed, shifts it toward p and keeps the far
// side, so H_j strictly separates p from the surviving parts i != j. The cuts
// are then moved into general position and the arrangement decides whether p
// lies in all rainbow simplices of the result (AllContain) or in none.
// Every round keeps at least ceil(|S_i|/2) points of each part it cuts.
FewSeparationsResult few_separations(const LabeledPointSet& set, const std::vector<IndexSet>& parts, const Point& p,
                                     const FewSeparationsOptions& options = {});

}  // namespace pachsel::selection
