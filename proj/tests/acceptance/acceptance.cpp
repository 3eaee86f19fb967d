#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "cli_runner.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "pachsel/audits.hpp"
#include "pachsel/bounds.hpp"
#include "pachsel/cones.hpp"
#include "pachsel/constructions.hpp"
#include "pachsel/deep_point.hpp"
#include "pachsel/few_separations.hpp"
#include "pachsel/generic_config.hpp"
#include "pachsel/pipeline.hpp"
#include "pachsel/predicates.hpp"
#include "pachsel/separation.hpp"

using namespace pachsel;
using nlohmann::json;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome end_to_end() {
  std::size_t ok = 0, runs = 0;
  double worst_d2 = 0;
  std::string failure;
  for (std::size_t d = 1; d <= 2; ++d)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const bool grid = seed % 2 == 0;
      const auto pts = cli::scratch(fmt("acc1_d%zu_s%llu.json", d, static_cast<unsigned long long>(seed)));
      const auto cert = cli::scratch(fmt("acc1_d%zu_s%llu.cert.json", d, static_cast<unsigned long long>(seed)));
      // Grid sides chosen so that n matches the target count (16 is the closest
      // grid count to 15 in the plane).
      const std::string gen = grid ? fmt("gen --dim %zu --shape grid-ball --eps %s", d, d == 1 ? "1/5" : "1/2")
                                   : fmt("gen --dim %zu --shape uniform-ball --n %d", d, d == 1 ? 10 : 15);
      ++runs;
      if (cli::run(gen + " --seed " + std::to_string(seed) + " --out " + q(pts)).exit_code != 0) {
        failure = "gen failed: " + gen;
        continue;
      }
      const auto t = Clock::now();
      const int sel = cli::run("select --in " + q(pts) + " --seed " + std::to_string(seed) + " --out " + q(cert)).exit_code;
      const auto ver = cli::run("verify --exhaustive --in " + q(pts) + " --cert " + q(cert));
      const double elapsed = seconds_since(t);
      if (d == 2) worst_d2 = std::max(worst_d2, elapsed);
      if (sel != 0 || ver.exit_code != 0) {
        failure = fmt("d=%zu seed=%llu select=%d verify=%d", d, static_cast<unsigned long long>(seed), sel, ver.exit_code);
        continue;
      }
      const auto v = json::parse(ver.out);
      if (v["fraction"] != "1") {
        failure = "fraction " + v["fraction"].dump();
        continue;
      }
      ++ok;
    }
  const bool pass = ok == runs && worst_d2 < 60;
  return {pass, fmt("%zu/%zu verified with fraction 1, slowest d=2 select+verify %.2f s", ok, runs, worst_d2) +
                    (failure.empty() ? "" : "; " + failure)};
}

LabeledPointSet symmetric_instance(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<Point>> colors(3);
  for (auto& c : colors)
    while (c.size() < n) {
      const Point x = oracle::random_point(rng, 2, -8, 8);
      c.push_back(x);
      c.push_back(Rational(-1) * x);
    }
  return LabeledPointSet(2, std::move(colors));
}

Outcome deep_point_constant() {
  std::mt19937_64 rng(20);
  double worst = 1, slowest = 0;
  for (int k = 0; k < 10; ++k) {
    const auto set = symmetric_instance(rng, 20);
    const auto t = Clock::now();
    selection::DeepPointOptions opts;
    opts.seed = static_cast<std::uint64_t>(k);
    const auto r = selection::deep_rainbow_point(set, opts);
    slowest = std::max(slowest, seconds_since(t));
    worst = std::min(worst, static_cast<double>(r.depth) / static_cast<double>(r.total));
  }
  return {worst >= 0.15 && slowest < 30, fmt("min depth/total %.4f (>= 0.15), slowest %.2f s", worst, slowest)};
}

Outcome few_separations_law() {
  std::mt19937_64 rng(30);
  int ok = 0, runs = 0, all_contain = 0;
  std::size_t smallest = 40;
  while (runs < 100) {
    // Odd runs cluster each color near one vertex of a large triangle around
    // the origin, which makes the all-contain branch reachable.
    const bool clustered = runs % 2 == 1;
    const Point centers[3] = {Point{0, 8}, Point{-7, -4}, Point{7, -4}};
    std::vector<std::vector<Point>> colors(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (int k = 0; k < 40; ++k)
        colors[i].push_back(clustered ? centers[i] + oracle::random_point(rng, 2, -2, 2) : oracle::random_point(rng, 2));
    const LabeledPointSet set(2, std::move(colors));
    const Point p = oracle::random_point(rng, 2, -1, 1);
    if (!geometry::in_general_position(set) || !geometry::extends_general_position(set.all_points(), p, 2)) continue;
    ++runs;
    std::vector<IndexSet> parts(3, iota_set(40));
    selection::FewSeparationsOptions opts;
    opts.seed = static_cast<std::uint64_t>(runs);
    const auto r = selection::few_separations(set, parts, p, opts);
    bool good = true;
    for (const auto& y : r.y) {
      smallest = std::min(smallest, y.size());
      good &= y.size() >= 10;
    }
    const auto contained = oracle::rainbow_containment(set, r.y, p);
    if (r.branch == selection::FewSeparationsBranch::AllContain) {
      ++all_contain;
      good &= contained == oracle::product_of_sizes(r.y);
    } else {
      good &= contained == 0;
    }
    ok += good;
  }
  return {ok == runs, fmt("%d/%d runs obey |Y_i| >= 10 and match the oracle branch (min |Y_i| %zu, %d all-contain)", ok,
                          runs, smallest, all_contain)};
}

Outcome solid_angle_calibration() {
  std::vector<cones::Vector> v(3, cones::Vector(2));
  v[0] << 0, 0;
  v[1] << 1, 0;
  v[2] << 0.5, std::sqrt(3.0) / 2;
  const auto tri = cones::Simplex::from_doubles(v);
  const auto e = cones::solid_angle_mc(tri, 0, 1'000'000, 40);
  const auto tet = cones::Simplex(std::vector<Point>{Point{1, 1, 1}, Point{1, -1, -1}, Point{-1, 1, -1}, Point{-1, -1, 1}});
  const auto t = cones::solid_angle_mc(tet, 0, 1'000'000, 41);
  const double exact = oracle::trihedral_fraction({0, -2, -2}, {-2, 0, -2}, {-2, -2, 0});
  const double dt = std::abs(e.mean - 1.0 / 6.0), dq = std::abs(t.mean - exact);
  return {dt <= 0.005 && dq <= 0.005,
          fmt("triangle %.5f (|err| %.5f), tetrahedron %.5f vs %.5f (|err| %.5f)", e.mean, dt, t.mean, exact, dq)};
}

// Random vertices in [-1, 1]^d, redrawn while degenerate.
cones::Simplex random_double_simplex(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    std::vector<cones::Vector> v(d + 1, cones::Vector(static_cast<Eigen::Index>(d)));
    for (auto& x : v)
      for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = u(rng);
    auto s = cones::Simplex::from_doubles(v);
    if (s.nondegenerate()) return s;
  }
}

Outcome msa_bound_audit() {
  std::mt19937_64 rng(50);
  int ok = 0, runs = 0;
  double worst = -1;
  for (std::size_t d : {3u, 4u}) {
    const double bound = cones::msa_upper_bound(d);
    for (int k = 0; k < 200; ++k, ++runs) {
      const auto m = cones::msa_mc(random_double_simplex(rng, d), 100'000, rng());
      ok += m.value <= bound + 3 * m.std_error;
      worst = std::max(worst, m.value / bound);
    }
  }
  return {ok == runs, fmt("%d/%d simplices with msa <= u(d) + 3 sigma (max msa/u %.3f)", ok, runs, worst)};
}

Outcome normal_fan_audit() {
  std::mt19937_64 rng(60);
  int ok = 0, runs = 0;
  double min_cov = 1, min_margin = 1;
  for (std::size_t d : {2u, 3u})
    for (int k = 0; k < 100; ++k, ++runs) {
      const auto r = cones::normal_fan_cover_check(random_double_simplex(rng, d), 100'000, rng());
      const double floor = 1.0 / static_cast<double>(d + 1) - 3 * r.max_std_error;
      min_cov = std::min(min_cov, r.coverage);
      min_margin = std::min(min_margin, r.max_fraction - floor);
      ok += r.coverage == 1.0 && r.max_fraction >= floor;
    }
  return {ok == runs, fmt("%d/%d simplices fully covered with max fraction >= 1/(d+1) - 3 sigma (min coverage %.6f)", ok,
                          runs, min_cov)};
}

Outcome corner_volume_audit() {
  int ok = 0, runs = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed, ++runs) {
    LabeledPointSet set;
    if (seed % 2 == 0) {
      constructions::GridBallConfig cfg;
      cfg.dim = 2;
      cfg.cube_side = Rational(1, 2);
      cfg.seed = seed;
      set = constructions::generate_grid_ball(cfg).set;
    } else {
      set = constructions::uniform_ball(2, 10, seed);
    }
    selection::PipelineParams params;
    params.seed = seed;
    const auto cert = selection::run_pipeline(set, params);
    const auto shrunk = selection::shrink_to_generic(set, cert.y, cert.p);
    const auto r = constructions::corner_volume_audit(set, shrunk.config, 1'000'000, seed);
    ok += r.passed;
  }
  return {ok == runs, fmt("%d/%d configurations with min corner volume <= 2^d msa beta_d + 3 sigma", ok, runs)};
}

Outcome corners_cover_suite() {
  std::mt19937_64 rng(80);
  int ok = 0, runs = 0;
  for (int k = 0; k < 10'000; ++k, ++runs) {
    const std::size_t d = 1 + static_cast<std::size_t>(k % 3);
    const auto arr = gen::arrangement_of(gen::random_simplex(rng, d));
    std::vector<Point> y;
    for (std::size_t i = 0; i <= d; ++i) y.push_back(gen::random_corner_point(rng, arr, i));
    const Point p = gen::random_simplex_point(rng, arr.vertices());
    ok += arrangements::corners_cover_simplex(arr, y, p);
  }
  return {ok == runs, fmt("%d/%d instances covered", ok, runs)};
}

Outcome separation_duality() {
  std::mt19937_64 rng(90);
  int ok = 0, runs = 0, inside = 0;
  for (std::size_t d = 1; d <= 3; ++d)
    for (int k = 0; k < 1000; ++k, ++runs) {
      const std::size_t m = 1 + rng() % (d + 3);
      std::vector<Point> s;
      for (std::size_t j = 0; j < m; ++j) s.push_back(oracle::random_point(rng, d, -3, 3));
      // Half the queries are convex combinations of S, half are uniform.
      Point p = oracle::random_point(rng, d, -3, 3);
      if (k % 2 == 0) {
        const auto w = gen::random_weights(rng, m, true);
        RationalVector x(d, Rational(0));
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t c = 0; c < d; ++c) x[c] += w[j] * s[j][c];
        p = Point(std::move(x));
      }
      std::vector<const Point*> ptrs;
      for (const auto& x : s) ptrs.push_back(&x);
      const auto h = geometry::strict_separation(p, ptrs);
      const bool hull = oracle::hull_contains(p, s);
      inside += hull;
      bool good = h.has_value() != hull;
      if (h) {
        good &= h->evaluate(p) < 0;
        for (const auto& x : s) good &= h->evaluate(x) > 0;
      }
      ok += good;
    }
  return {ok == runs, fmt("%d/%d instances agree with the hull oracle (%d inside)", ok, runs, inside)};
}

// Removes run-dependent fields from bench output.
std::string bench_fingerprint(const std::filesystem::path& dir) {
  std::vector<std::string> parts;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") {
      auto j = json::parse(cli::slurp(entry.path()));
      j.erase("timestamp");
      j.erase("wall_time_s");
      parts.push_back(entry.path().filename().string() + ":" + j.dump());
    } else {
      std::istringstream in(cli::slurp(entry.path()));
      std::string line, kept;
      while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cols.push_back(c);
        if (cols.size() > 5) cols.erase(cols.begin() + 5);
        for (const auto& x : cols) kept += x + ",";
        kept += "\n";
      }
      parts.push_back(entry.path().filename().string() + ":" + kept);
    }
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + "\n";
  return out;
}

Outcome determinism() {
  const auto pts = cli::scratch("acc10.json"), cert = cli::scratch("acc10.cert.json");
  if (cli::run("gen --dim 2 --shape grid-ball --eps 1/2 --seed 3 --out " + q(pts)).exit_code != 0 ||
      cli::run("select --in " + q(pts) + " --seed 3 --out " + q(cert)).exit_code != 0)
    return {false, "setup failed"};
  const std::vector<std::string> commands{
      "gen --dim 2 --shape grid-ball --eps 1/2 --seed 3",
      "gen --dim 2 --shape uniform-ball --n 12 --seed 3",
      "select --in " + q(pts) + " --seed 3",
      "verify --exhaustive --in " + q(pts) + " --cert " + q(cert),
      "deep --in " + q(pts) + " --seed 3",
      "angle --dim 3 --trials 5 --samples 20000 --seed 3",
      "bounds --dims 1..6",
  };
  std::size_t ok = 0;
  std::string failure;
  for (const auto& c : commands) {
    const auto a = cli::run(c), b = cli::run(c);
    if (a.exit_code == 0 && a.out == b.out && !a.out.empty()) ++ok;
    else failure = c;
  }
  const auto d1 = cli::scratch("acc10_bench_a"), d2 = cli::scratch("acc10_bench_b");
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
  const std::string bench = "bench --dims 1..2 --n 6 --runs 2 --seed 3 --out ";
  const bool bench_ok = cli::run(bench + q(d1)).exit_code == 0 && cli::run(bench + q(d2)).exit_code == 0 &&
                        bench_fingerprint(d1) == bench_fingerprint(d2);
  if (bench_ok) ++ok;
  else failure = "bench";
  return {ok == commands.size() + 1, fmt("%zu/%zu commands byte-identical across runs", ok, commands.size() + 1) +
                                         (failure.empty() ? "" : "; differs: " + failure)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"end-to-end certificate soundness", end_to_end},
      {"deep-point constant", deep_point_constant},
      {"few-separations size law", few_separations_law},
      {"solid-angle calibration", solid_angle_calibration},
      {"msa bound audit", msa_bound_audit},
      {"normal-fan cover audit", normal_fan_audit},
      {"corner-volume audit", corner_volume_audit},
      {"corner cover invariant", corners_cover_suite},
      {"separation / hull duality", separation_duality},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::printf("%s %2zu %s: %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
