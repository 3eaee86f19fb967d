#include "pachsel/pipeline.hpp"

#include <cmath>

#include "pachsel/errors.hpp"
#include "pachsel/few_separations.hpp"
#include "pachsel/hypergraph.hpp"
#include "pachsel/perturb.hpp"
#include "pachsel/predicates.hpp"
#include "pachsel/regularity.hpp"

namespace pachsel::selection {
namespace {

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

nlohmann::json sizes_json(const std::vector<IndexSet>& parts) {
  auto a = nlohmann::json::array();
  for (const auto& p : parts) a.push_back(p.size());
  return a;
}

Rational ratio(std::size_t num, std::size_t den) {
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

}  // namespace

PachCertificate run_pipeline(const LabeledPointSet& set, const PipelineParams& params) {
  const std::size_t d = set.dim();
  PachCertificate cert;
  cert.dim = d;
  cert.seed = params.seed;
  cert.input_hash = params.input_hash;

  stage("input", [&] {
    if (!set.equal_sizes()) throw PreconditionError("color classes must have equal sizes");
    if (set.size(0) == 0) throw PreconditionError("color classes are empty");
    const auto pts = set.all_points();
    if (auto bad = geometry::find_dependent_tuple(pts, d))
      throw PreconditionError("points are not in general position");
    return 0;
  });
  const std::size_t n = set.size(0);
  const double epsilon = params.epsilon.value_or(std::ldexp(1.0, -static_cast<int>(d)));

  const auto deep = stage("deep-point", [&] {
    DeepPointOptions opts;
    opts.budget = params.rainbow_budget;
    opts.seed = params.seed;
    opts.random_candidates = params.random_candidates;
    opts.extra_candidates = params.extra_candidates;
    return deep_rainbow_point(set, opts);
  });
  cert.stages.push_back({"deep-point",
                         {{"depth", deep.depth}, {"total", deep.total}, {"strategy", deep.strategy},
                          {"candidates", deep.candidates_evaluated}}});

  const auto anchor = stage("perturb-anchor", [&] {
    PerturbOptions opts;
    opts.seed = params.seed + 1;
    return perturb_anchor(deep.p, set, opts);
  });
  cert.stages.push_back({"perturb-anchor",
                         {{"moved", anchor.moved}, {"attempts", anchor.attempts}, {"open_depth", anchor.open_depth}}});

  const RainbowHypergraph h = stage("hypergraph", [&] {
    return RainbowHypergraph(set, anchor.p, geometry::SimplexMode::Closed, params.rainbow_budget);
  });
  const double beta = std::min(static_cast<double>(deep.depth) / static_cast<double>(deep.total), h.density());
  cert.stages.push_back({"hypergraph", {{"edges", h.edge_count()}, {"density", h.density()}, {"beta", beta}}});

  RegularityParams rp;
  rp.epsilon = epsilon;
  rp.beta = beta;
  rp.budget = params.witness_budget;
  rp.sampled_trials = params.sampled_trials;
  rp.seed = params.seed + 2;
  std::optional<std::vector<IndexSet>> start;
  FewSeparationsResult sep;
  for (std::size_t round = 0;; ++round) {
    auto reg = stage("regularity", [&] { return weak_regularity(h, rp, start); });
    cert.stages.push_back({"regularity",
                           {{"round", round}, {"s", reg.s}, {"density", reg.density},
                            {"steps", reg.steps.size()}, {"witness", reg.witness_report()}}});
    sep = stage("few-separations", [&] {
      FewSeparationsOptions opts;
      opts.seed = params.seed + 3 + round;
      opts.check_general_position = false;
      return few_separations(set, reg.parts, anchor.p, opts);
    });
    const bool all = sep.branch == FewSeparationsBranch::AllContain;
    cert.stages.push_back(
        {"few-separations", {{"round", round}, {"branch", all ? "all" : "none"}, {"sizes", sizes_json(sep.y)}}});
    if (all) break;
    // The surviving parts span no edge: use them as the witness.
    std::size_t w = sep.y[0].size();
    for (const auto& y : sep.y) w = std::min(w, y.size());
    if (reg.search == WitnessSearch::Exhaustive && w >= witness_size(epsilon, reg.s))
      throw StageError("few-separations", InternalError("edgeless large sub-tuple after an exhaustive clean search"));
    std::vector<IndexSet> witness;
    for (const auto& y : sep.y) witness.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(w));
    start = stage("regularity", [&] { return densify(h, reg.parts, witness); });
    rp.seed += 1000;
  }

  cert.p = anchor.p;
  cert.y = sep.y;
  cert.arrangement = sep.arrangement;
  for (std::size_t i = 0; i <= d; ++i) cert.fractions.push_back(ratio(cert.y[i].size(), n));

  if (params.verify) {
    std::vector<std::size_t> sizes;
    for (const auto& y : cert.y) sizes.push_back(y.size());
    const auto mode = rainbow_count(sizes) <= params.verify_budget ? VerificationMode::Exhaustive
                                                                   : VerificationMode::Arrangement;
    const auto report = stage("verify", [&] { return verify_certificate(set, cert, mode); });
    cert.stages.push_back({"verify", {{"mode", to_string(mode)}, {"passed", report.passed}}});
    if (!report.passed) throw StageError("verify", VerificationError(report.message));
    cert.verified = mode;
  }
  return cert;
}

}  // namespace pachsel::selection
