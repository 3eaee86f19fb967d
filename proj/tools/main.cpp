#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "pachsel/errors.hpp"

namespace {

int exit_code(const pachsel::Error& e) {
  using pachsel::ErrorKind;
  switch (pachsel::classify(e)) {
    case ErrorKind::Parse: return pachsel::cli::kParse;
    case ErrorKind::Precondition: return pachsel::cli::kPrecondition;
    case ErrorKind::Budget: return pachsel::cli::kBudget;
    case ErrorKind::Verification: return pachsel::cli::kVerification;
    case ErrorKind::Internal: return pachsel::cli::kInternal;
  }
  return pachsel::cli::kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pachsel::cli;
  CLI::App app{"Colorful point selection: certificates, audits and bounds"};
  app.footer(
      "Exit codes: 0 ok, 1 internal error, 2 parse error, 3 precondition violated,\n"
      "            4 budget exhausted, 5 verification failed");
  app.require_subcommand(1);
  int status = kOk;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a colored point set");
  g->add_option("--dim", gen.dim, "Dimension")->check(CLI::Range(1, 8));
  g->add_option("--eps", gen.eps, "Cube side for grid-ball (rational)");
  g->add_option("--shape", gen.shape, "Shape")
      ->check(CLI::IsMember({"grid-ball", "uniform-ball", "gaussian", "measure-file"}));
  g->add_option("--n", gen.n, "Points per color (uniform-ball, gaussian)");
  g->add_option("--measure", gen.measure, "WeightedPointMeasure JSON (measure-file)");
  g->add_option("--spread", gen.spread, "Discretization spread (measure-file, rational)");
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("--out", gen.out, "Output file (default stdout)");
  g->callback([&] { status = cmd_gen(gen); });

  SelectArgs sel;
  auto* s = app.add_subcommand("select", "Run the selection pipeline and write a certificate");
  s->add_option("--in", sel.in, "Point set JSON")->required();
  s->add_option("--out", sel.out, "Certificate output (default stdout)");
  s->add_option("--seed", sel.seed, "Seed");
  s->add_option("--epsilon", sel.epsilon, "Regularity epsilon (default 2^-d)");
  s->add_option("--budget", sel.budget, "Rainbow simplex budget");
  s->add_option("--candidates", sel.candidates, "Random deep-point candidates");
  s->add_flag("--no-verify", sel.no_verify, "Skip certificate verification");
  s->callback([&] { status = cmd_select(sel); });

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Verify a certificate against a point set");
  v->add_option("--in", ver.in, "Point set JSON")->required();
  v->add_option("--cert", ver.cert, "Certificate JSON")->required();
  v->add_option("--out", ver.out, "Verdict output (default stdout)");
  auto* ex = v->add_flag("--exhaustive", "Test every rainbow simplex (default)");
  v->add_flag("--arrangement", ver.arrangement, "Check the separating arrangement only")->excludes(ex);
  v->callback([&] { status = cmd_verify(ver); });

  DeepArgs deep;
  auto* dp = app.add_subcommand("deep", "Find a point of large rainbow depth");
  dp->add_option("--in", deep.in, "Point set JSON")->required();
  dp->add_option("--out", deep.out, "Output (default stdout)");
  dp->add_option("--seed", deep.seed, "Seed");
  dp->add_option("--budget", deep.budget, "Rainbow simplex budget");
  dp->add_option("--candidates", deep.candidates, "Random candidates");
  dp->callback([&] { status = cmd_deep(deep); });

  AngleArgs angle;
  auto* an = app.add_subcommand("angle", "Estimate minimum solid angles");
  an->add_option("--simplex", angle.simplex, "Simplex JSON {\"vertices\": [...]}");
  an->add_option("--dim", angle.dim, "Dimension for random search")->check(CLI::Range(1, 8));
  an->add_option("--trials", angle.trials, "Random simplices to search");
  an->add_option("--samples", angle.samples, "Samples per vertex");
  an->add_option("--seed", angle.seed, "Seed");
  an->add_option("--out", angle.out, "Output (default stdout)");
  an->callback([&] { status = cmd_angle(angle); });

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Print the bound table as CSV");
  b->add_option("--dims", bounds.dims, "Dimension range a..b");
  b->add_option("--out", bounds.out, "Output (default stdout)");
  b->callback([&] { status = cmd_bounds(bounds); });

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Run seeded pipeline experiments");
  be->add_option("--dims", bench.dims, "Dimension range a..b");
  be->add_option("--n", bench.sizes, "Points per color (repeatable)");
  be->add_option("--runs", bench.runs, "Runs per (dim, n)");
  be->add_option("--seed", bench.seed, "First seed");
  be->add_option("--shape", bench.shape, "Instance shape")->check(CLI::IsMember({"uniform-ball", "gaussian"}));
  be->add_option("--out", bench.out, "Results directory");
  be->callback([&] { status = cmd_bench(bench); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  } catch (const pachsel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return status;
}
