#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "pachsel/bounds.hpp"
#include "pachsel/cones.hpp"
#include "pachsel/constructions.hpp"
#include "pachsel/deep_point.hpp"
#include "pachsel/errors.hpp"
#include "pachsel/io.hpp"
#include "pachsel/pipeline.hpp"

namespace pachsel::cli {
namespace {

using io::json;

void emit(const std::string& path, const json& j) {
  if (path.empty() || path == "-") std::cout << io::dump(j);
  else io::write_json_file(path, j);
}

// "a..b" or a single integer.
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  try {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
      const auto v = std::stoul(text);
      return {v, v};
    }
    const auto a = std::stoul(text.substr(0, dots));
    const auto b = std::stoul(text.substr(dots + 2));
    if (a == 0 || b < a) throw ParseError("empty or zero dimension range \"" + text + "\"");
    return {a, b};
  } catch (const std::logic_error&) {
    throw ParseError("invalid range \"" + text + "\"");
  }
}

LabeledPointSet load_points(const std::string& path) { return io::point_set_from_json(io::read_json_file(path)); }

// Unequal color sizes are made equal by giving color i L/|X_i| copies of each
// point, L = lcm of the sizes, spread below a quarter of the smallest
// distance so the union is in general position.
struct Replicated {
  LabeledPointSet set;
  std::vector<std::size_t> copies;
};

Replicated replicate(const LabeledPointSet& set, std::uint64_t seed) {
  const std::size_t d = set.dim();
  std::size_t lcm = 1;
  for (std::size_t i = 0; i <= d; ++i) {
    if (set.size(i) == 0) throw PreconditionError("color " + std::to_string(i) + " is empty");
    lcm = std::lcm(lcm, set.size(i));
    if (lcm > 100'000) throw BudgetError("replication to equal sizes needs more than 100000 points per color");
  }
  const auto pts = set.all_points();
  Rational min_sq = 1;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      const Rational s = squared_norm((*pts[a] - *pts[b]).coords());
      if (s == 0) throw PreconditionError("input contains repeated points");
      if (s < min_sq) min_sq = s;
    }
  Rational spread = dyadic_floor(min_sq) / 4;
  const Rational tiny(1, 1 << 20);
  if (spread > tiny) spread = tiny;
  constructions::WeightedPointMeasure m;
  m.dim = d;
  Replicated r;
  for (std::size_t i = 0; i <= d; ++i) {
    auto& col = m.colors.emplace_back();
    Rational w(1, static_cast<long>(set.size(i)));
    for (const auto& p : set.color(i)) col.push_back({p, w});
    r.copies.push_back(lcm / set.size(i));
  }
  r.set = constructions::discretize_measure(m, spread, seed);
  return r;
}

json deep_to_json(const selection::DeepPointResult& r) {
  return {{"p", io::point_to_json(r.p)},
          {"depth", r.depth},
          {"total", r.total},
          {"ratio", r.total ? static_cast<double>(r.depth) / static_cast<double>(r.total) : 0.0},
          {"strategy", r.strategy},
          {"candidates", r.candidates_evaluated}};
}

json estimate_to_json(const cones::Estimate& e) {
  return {{"mean", e.mean}, {"std_error", e.std_error}, {"samples", e.samples}};
}

std::vector<cones::Vector> random_simplex(std::mt19937_64& rng, std::size_t d) {
  std::vector<cones::Vector> v;
  for (std::size_t i = 0; i <= d; ++i) v.push_back(cones::random_ball_point(rng, d));
  return v;
}

// Shared by select and bench.
selection::PachCertificate select_points(const LabeledPointSet& set, const selection::PipelineParams& base) {
  auto params = base;
  params.input_hash = io::canonical_hash(io::point_set_to_json(set));
  if (set.equal_sizes()) return selection::run_pipeline(set, params);

  const auto rep = replicate(set, params.seed);
  const bool verify = params.verify;
  params.verify = false;
  auto cert = selection::run_pipeline(rep.set, params);
  for (std::size_t i = 0; i < cert.y.size(); ++i) {
    IndexSet mapped;
    for (std::size_t k : cert.y[i]) mapped.push_back(k / rep.copies[i]);
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    cert.y[i] = std::move(mapped);
    cert.fractions[i] = Rational(static_cast<long>(cert.y[i].size()), static_cast<long>(set.size(i)));
    cert.fractions[i].canonicalize();
  }
  auto copies = json::array();
  for (auto c : rep.copies) copies.push_back(c);
  cert.stages.push_back({"replicate", {{"copies", copies}}});
  cert.verified.reset();
  if (verify) {
    const auto report = selection::verify_certificate(set, cert, selection::VerificationMode::Exhaustive);
    if (!report.passed) throw VerificationError("replicated selection does not verify: " + report.message);
    cert.verified = selection::VerificationMode::Exhaustive;
  }
  return cert;
}

}  // namespace

int cmd_gen(const GenArgs& a) {
  json j;
  json meta = {{"shape", a.shape}, {"seed", a.seed}};
  if (a.shape == "grid-ball") {
    constructions::GridBallConfig cfg;
    cfg.dim = a.dim;
    cfg.cube_side = parse_rational(a.eps);
    cfg.seed = a.seed;
    const auto r = constructions::generate_grid_ball(cfg);
    j = io::point_set_to_json(r.set);
    meta["eps"] = to_string(cfg.cube_side);
    meta["cubes"] = r.cubes;
    meta["boundary_cubes"] = r.boundary_cubes;
    meta["sandwich"] = {r.lower, r.upper};
    meta["condition_g"] = r.condition_g == geometry::Verdict::Holds ? "holds" : "indeterminate";
  } else if (a.shape == "uniform-ball") {
    j = io::point_set_to_json(constructions::uniform_ball(a.dim, a.n, a.seed));
    meta["n"] = a.n;
  } else if (a.shape == "gaussian") {
    j = io::point_set_to_json(constructions::gaussian(a.dim, a.n, a.seed));
    meta["n"] = a.n;
  } else if (a.shape == "measure-file") {
    if (a.measure.empty()) throw ParseError("--shape measure-file needs --measure");
    const auto m = io::measure_from_json(io::read_json_file(a.measure));
    const Rational spread = parse_rational(a.spread);
    j = io::point_set_to_json(constructions::discretize_measure(m, spread, a.seed));
    meta["spread"] = to_string(spread);
  } else {
    throw ParseError("unknown shape \"" + a.shape + "\"");
  }
  j["generator"] = meta;
  emit(a.out, j);
  return kOk;
}

int cmd_select(const SelectArgs& a) {
  const auto set = load_points(a.in);
  selection::PipelineParams params;
  params.seed = a.seed;
  params.epsilon = a.epsilon;
  params.rainbow_budget = a.budget;
  params.random_candidates = a.candidates;
  params.verify = !a.no_verify;
  const auto cert = select_points(set, params);
  emit(a.out, io::certificate_to_json(cert));
  return kOk;
}

int cmd_verify(const VerifyArgs& a) {
  const auto set = load_points(a.in);
  const auto cert = io::certificate_from_json(io::read_json_file(a.cert));
  const auto mode = a.arrangement ? selection::VerificationMode::Arrangement : selection::VerificationMode::Exhaustive;
  const auto report = selection::verify_certificate(set, cert, mode);
  emit(a.out, io::verification_to_json(report));
  if (!report.passed) {
    std::cerr << "verification failed: " << report.message << "\n";
    return kVerification;
  }
  return kOk;
}

int cmd_deep(const DeepArgs& a) {
  const auto set = load_points(a.in);
  selection::DeepPointOptions opts;
  opts.seed = a.seed;
  opts.budget = a.budget;
  opts.random_candidates = a.candidates;
  emit(a.out, deep_to_json(selection::deep_rainbow_point(set, opts)));
  return kOk;
}

int cmd_angle(const AngleArgs& a) {
  json out;
  if (!a.simplex.empty()) {
    const auto j = io::read_json_file(a.simplex);
    std::vector<Point> verts;
    for (const auto& v : j.at("vertices")) verts.push_back(io::point_from_json(v));
    const cones::Simplex simplex(std::move(verts));
    const auto msa = cones::msa_mc(simplex, a.samples, a.seed);
    auto per = json::array();
    for (const auto& e : msa.per_vertex) per.push_back(estimate_to_json(e));
    out = {{"mode", "msa"},           {"dim", simplex.dim()},         {"per_vertex", per},
           {"msa", msa.value},        {"std_error", msa.std_error},   {"argmin", msa.argmin},
           {"bound", cones::msa_upper_bound(simplex.dim())}};
  } else {
    if (a.trials == 0) throw ParseError("angle needs --simplex or --trials");
    std::mt19937_64 rng(a.seed);
    double best = -1, best_se = 0;
    std::size_t best_trial = 0;
    for (std::size_t t = 0; t < a.trials; ++t) {
      const auto simplex = cones::Simplex::from_doubles(random_simplex(rng, a.dim));
      if (!simplex.nondegenerate()) continue;
      const auto msa = cones::msa_mc(simplex, a.samples, a.seed + t + 1);
      if (msa.value > best) {
        best = msa.value;
        best_se = msa.std_error;
        best_trial = t;
      }
    }
    out = {{"mode", "search"},
           {"dim", a.dim},
           {"trials", a.trials},
           {"samples", a.samples},
           {"best_msa", best},
           {"best_std_error", best_se},
           {"best_trial", best_trial},
           {"bound", cones::msa_upper_bound(a.dim)}};
  }
  emit(a.out, out);
  return kOk;
}

int cmd_bounds(const BoundsArgs& a) {
  const auto [first, last] = parse_range(a.dims);
  std::ostringstream csv;
  csv.precision(17);
  csv << "d,u,g,lower_bound_exponent,rho,clamped\n";
  for (const auto& r : cones::bound_table(first, last))
    csv << r.dim << ',' << r.u << ',' << r.g << ',' << r.lower_bound_exponent << ',' << r.rho << ','
        << (r.clamped ? "true" : "false") << '\n';
  if (a.out.empty() || a.out == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream f(a.out);
    if (!f) throw Error("cannot write " + a.out);
    f << csv.str();
  }
  return kOk;
}

int cmd_bench(const BenchArgs& a) {
  namespace fs = std::filesystem;
  const auto [first, last] = parse_range(a.dims);
  fs::create_directories(a.out);
  std::ofstream csv(fs::path(a.out) / "aggregate.csv");
  if (!csv) throw Error("cannot write " + a.out + "/aggregate.csv");
  csv << "dim,n,seed,min_fraction,lower_bound_exponent,runtime_s,record\n";
  int status = kOk;
  for (std::size_t d = first; d <= last; ++d)
    for (std::size_t n : a.sizes)
      for (std::size_t r = 0; r < a.runs; ++r) {
        const std::uint64_t seed = a.seed + r;
        const auto set = a.shape == "gaussian" ? constructions::gaussian(d, n, seed)
                                               : constructions::uniform_ball(d, n, seed);
        selection::PipelineParams params;
        params.seed = seed;
        const auto start = std::chrono::steady_clock::now();
        json outputs;
        double min_fraction = 0;
        try {
          const auto cert = select_points(set, params);
          outputs = io::certificate_to_json(cert);
          min_fraction = 1;
          for (const auto& f : cert.fractions) min_fraction = std::min(min_fraction, to_double(f));
        } catch (const Error& e) {
          outputs = {{"error", e.what()}};
          status = kVerification;
        }
        const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json record = {{"command", "bench"},
                       {"config", {{"dim", d}, {"n", n}, {"shape", a.shape}}},
                       {"seeds", {{"instance", seed}, {"pipeline", seed}}},
                       {"input_hash", io::canonical_hash(io::point_set_to_json(set))},
                       {"outputs", outputs}};
        const auto id = io::canonical_hash(record);
        record["timestamp"] = static_cast<std::int64_t>(std::time(nullptr));
        record["wall_time_s"] = wall;
        io::write_json_file(fs::path(a.out) / (id + ".json"), record);
        csv << d << ',' << n << ',' << seed << ',' << min_fraction << ','
            << cones::bound_row(d).lower_bound_exponent << ',' << wall << ',' << id << '\n';
      }
  return status;
}

}  // namespace pachsel::cli
