#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "pachsel/arrangement.hpp"
#include "pachsel/point_set.hpp"

namespace pachsel::selection {

enum class VerificationMode { Exhaustive, Arrangement };

struct StageRecord {
  std::string name;
  nlohmann::json details;  // deterministic summary (no timings)
};

// Output of the selection pipeline: p lies in every rainbow simplex of the
// Y_i, witnessed by an arrangement with p in its central simplex and each Y_i
// inside its corner region.
struct PachCertificate {
  std::string input_hash;
  std::size_t dim = 0;
  Point p;
  std::vector<IndexSet> y;
  arrangements::HyperplaneArrangement arrangement;
  std::vector<Rational> fractions;  // |Y_i| / |X_i|
  std::optional<VerificationMode> verified;
  std::uint64_t seed = 0;
  std::vector<StageRecord> stages;
};

struct VerificationReport {
  VerificationMode mode = VerificationMode::Exhaustive;
  bool passed = false;
  std::uint64_t contained = 0;
  std::uint64_t total = 0;
  // contained / total (1 when total == 0).
  Rational fraction;
  // First rainbow simplex (one index per color) not containing p.
  std::optional<std::vector<std::size_t>> witness;
  std::vector<std::string> warnings;
  std::string message;
};

// Exhaustive mode tests p against every rainbow simplex of the Y_i (closed,
// exact). Arrangement mode re-checks the separation preconditions and that p
// lies in the central simplex. Index errors are reported, not thrown.
VerificationReport verify_certificate(const LabeledPointSet& set, const PachCertificate& cert,
                                      VerificationMode mode = VerificationMode::Exhaustive);

std::string to_string(VerificationMode mode);

}  // namespace pachsel::selection
