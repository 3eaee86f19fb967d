#include "pachsel/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "pachsel/errors.hpp"

namespace pachsel::selection {
namespace {

double log_binomial(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// Vertices v of the last part such that no edge uses v together with the
// chosen vertices of the other parts.
class FreeTracker {
 public:
  FreeTracker(const RainbowHypergraph& h, const std::vector<IndexSet>& parts)
      : h_(h), parts_(parts), k_(parts.size()), chosen_(k_ - 1) {}

  // Number of last-part vertices free against all complete combinations of
  // chosen vertices; with any part still empty, every vertex is free.
  std::vector<std::size_t> free_vertices() const {
    std::vector<std::size_t> out;
    for (std::size_t v : parts_.back())
      if (is_free(v)) out.push_back(v);
    return out;
  }

  bool is_free(std::size_t v) const {
    for (const auto& c : chosen_)
      if (c.empty()) return true;
    std::vector<IndexSet> probe(chosen_.begin(), chosen_.end());
    probe.push_back({v});
    return h_.edge_count(probe) == 0;
  }

  std::vector<IndexSet>& chosen() { return chosen_; }

 private:
  const RainbowHypergraph& h_;
  const std::vector<IndexSet>& parts_;
  std::size_t k_;
  std::vector<IndexSet> chosen_;
};

std::vector<IndexSet> complete_witness(std::vector<IndexSet> chosen, const std::vector<std::size_t>& free,
                                       std::size_t t) {
  IndexSet last(free.begin(), free.begin() + static_cast<std::ptrdiff_t>(t));
  chosen.push_back(std::move(last));
  for (auto& c : chosen) std::sort(c.begin(), c.end());
  return chosen;
}

}  // namespace

std::string RegularityResult::witness_report() const {
  return search == WitnessSearch::Exhaustive ? "exhaustive-clean" : "sampled-clean(" + std::to_string(trials) + ")";
}

std::size_t witness_size(double epsilon, std::size_t s) {
  const auto t = static_cast<std::size_t>(std::ceil(epsilon * static_cast<double>(s) - 1e-12));
  return std::clamp<std::size_t>(t, 1, std::max<std::size_t>(s, 1));
}

WitnessOutcome find_empty_subtuple(const RainbowHypergraph& h, const std::vector<IndexSet>& parts, std::size_t t,
                                   const RegularityParams& params, std::uint64_t seed) {
  const std::size_t k = parts.size();
  if (k < 2) throw PreconditionError("find_empty_subtuple: need at least two parts");
  for (const auto& p : parts)
    if (p.size() < t) throw PreconditionError("find_empty_subtuple: part smaller than witness size");
  WitnessOutcome out;
  const double log_space =
      static_cast<double>(k - 1) * log_binomial(static_cast<double>(parts[0].size()), static_cast<double>(t));
  const bool exhaustive = log_space <= std::log(static_cast<double>(params.budget)) + 1e-9;
  out.search = exhaustive ? WitnessSearch::Exhaustive : WitnessSearch::Sampled;

  if (exhaustive) {
    // Backtracking over the first k-1 parts in index order, pruning as soon
    // as fewer than t vertices of the last part remain free.
    FreeTracker tracker(h, parts);
    std::function<bool(std::size_t, std::size_t)> extend = [&](std::size_t part, std::size_t start) -> bool {
      auto& chosen = tracker.chosen();
      if (part == k - 1) {
        const auto free = tracker.free_vertices();
        if (free.size() >= t) {
          out.witness = complete_witness(chosen, free, t);
          return true;
        }
        return false;
      }
      if (chosen[part].size() == t) return extend(part + 1, 0);
      const auto& pool = parts[part];
      for (std::size_t i = start; i + (t - chosen[part].size()) <= pool.size(); ++i) {
        chosen[part].push_back(pool[i]);
        const bool viable = tracker.free_vertices().size() >= t;
        if (viable && extend(part, i + 1)) return true;
        chosen[part].pop_back();
      }
      return false;
    };
    extend(0, 0);
    return out;
  }

  // Randomized greedy: random first part, then grow the others in random
  // order while at least t vertices of the last part stay free.
  std::mt19937_64 rng(seed);
  for (std::uint64_t trial = 1; trial <= params.sampled_trials; ++trial) {
    out.trials = trial;
    FreeTracker tracker(h, parts);
    auto& chosen = tracker.chosen();
    bool failed = false;
    for (std::size_t part = 0; part + 1 < k && !failed; ++part) {
      IndexSet order = parts[part];
      std::shuffle(order.begin(), order.end(), rng);
      for (std::size_t v : order) {
        if (chosen[part].size() == t) break;
        chosen[part].push_back(v);
        if (tracker.free_vertices().size() < t) chosen[part].pop_back();
      }
      failed = chosen[part].size() < t;
    }
    if (failed) continue;
    const auto free = tracker.free_vertices();
    if (free.size() >= t) {
      out.witness = complete_witness(chosen, free, t);
      return out;
    }
  }
  return out;
}

std::vector<IndexSet> densify(const RainbowHypergraph& h, const std::vector<IndexSet>& parts,
                              const std::vector<IndexSet>& witness, RegularityStep* step) {
  const std::size_t k = parts.size();
  const std::size_t s = parts[0].size();
  if (witness.size() != k) throw DimensionMismatch("densify: witness arity");
  const std::size_t t = witness[0].size();
  for (const auto& w : witness)
    if (w.size() != t || t == 0) throw PreconditionError("densify: witness parts must have one common size");

  // (a) block tuples.
  std::vector<std::vector<IndexSet>> blocks(k);
  for (std::size_t i = 0; i < k; ++i) {
    blocks[i].push_back(witness[i]);
    IndexSet rest;
    std::set_difference(parts[i].begin(), parts[i].end(), witness[i].begin(), witness[i].end(),
                        std::back_inserter(rest));
    for (std::size_t b = 0; b + t <= rest.size(); b += t)
      blocks[i].emplace_back(rest.begin() + static_cast<std::ptrdiff_t>(b),
                             rest.begin() + static_cast<std::ptrdiff_t>(b + t));
  }
  std::vector<IndexSet> best_block;
  double best_block_density = -1;
  if (t < s) {
    std::vector<IndexSet> block_ids;
    for (std::size_t i = 0; i < k; ++i) block_ids.push_back(iota_set(blocks[i].size()));
    for_each_tuple(block_ids, [&](std::span<const std::size_t> b) {
      if (std::all_of(b.begin(), b.end(), [](std::size_t x) { return x == 0; })) return;
      std::vector<IndexSet> cand(k);
      for (std::size_t i = 0; i < k; ++i) cand[i] = blocks[i][b[i]];
      const double dens = h.density(cand);
      if (dens > best_block_density) {
        best_block_density = dens;
        best_block = std::move(cand);
      }
    });
  }

  // (b) peel a minimum-degree vertex from each part in turn; removing a
  // vertex of at most average degree never lowers the density.
  std::vector<IndexSet> peeled = parts;
  if (s > 1) {
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t worst = 0;
      std::uint64_t worst_deg = 0;
      for (std::size_t pos = 0; pos < peeled[i].size(); ++pos) {
        const auto deg = h.degree(peeled, i, peeled[i][pos]);
        if (pos == 0 || deg < worst_deg) {
          worst_deg = deg;
          worst = pos;
        }
      }
      peeled[i].erase(peeled[i].begin() + static_cast<std::ptrdiff_t>(worst));
    }
  }
  const double peeled_density = h.density(peeled);
  const bool use_block = !best_block.empty() && best_block_density >= peeled_density;
  if (step) {
    step->move = use_block ? "block" : "peel";
    step->density = use_block ? best_block_density : peeled_density;
    step->s = use_block ? t : peeled[0].size();
  }
  return use_block ? best_block : peeled;
}

RegularityResult weak_regularity(const RainbowHypergraph& h, const RegularityParams& params,
                                 std::optional<std::vector<IndexSet>> start) {
  if (!(params.epsilon > 0 && params.epsilon <= 0.5)) throw PreconditionError("weak_regularity: epsilon must lie in (0, 1/2]");
  std::vector<IndexSet> parts;
  if (start) {
    parts = std::move(*start);
  } else {
    for (std::size_t s : h.sizes()) parts.push_back(iota_set(s));
  }
  if (parts.size() != h.num_parts()) throw DimensionMismatch("weak_regularity: need one part per color");
  for (auto& p : parts) {
    std::sort(p.begin(), p.end());
    if (p.size() != parts[0].size()) throw PreconditionError("weak_regularity: parts must have equal sizes");
  }
  if (parts[0].empty()) throw PreconditionError("weak_regularity: empty parts");
  RegularityResult result;
  result.density = h.density(parts);
  if (result.density < params.beta)
    throw PreconditionError("weak_regularity: density " + std::to_string(result.density) + " below beta " +
                            std::to_string(params.beta));
  std::uint64_t round = 0;
  while (true) {
    const std::size_t s = parts[0].size();
    const std::size_t t = witness_size(params.epsilon, s);
    auto outcome = find_empty_subtuple(h, parts, t, params, params.seed + round++);
    if (!outcome.witness) {
      result.parts = std::move(parts);
      result.s = s;
      result.density = h.density(result.parts);
      result.search = outcome.search;
      result.trials = outcome.trials;
      return result;
    }
    RegularityStep step;
    auto next = densify(h, parts, *outcome.witness, &step);
    if (step.density + 1e-12 < h.density(parts)) throw InternalError("weak_regularity: density decreased");
    parts = std::move(next);
    result.steps.push_back(step);
  }
}

}  // namespace pachsel::selection
