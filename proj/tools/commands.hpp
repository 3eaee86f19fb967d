#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pachsel::cli {

// Exit codes shared by every subcommand.
enum Exit : int { kOk = 0, kInternal = 1, kParse = 2, kPrecondition = 3, kBudget = 4, kVerification = 5 };

struct GenArgs {
  std::size_t dim = 2;
  std::string eps = "1/2";
  std::string shape = "grid-ball";
  std::size_t n = 10;
  std::string measure;
  std::string spread = "1/1000";
  std::uint64_t seed = 0;
  std::string out;
};

struct SelectArgs {
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<double> epsilon;
  std::uint64_t budget = 50'000'000;
  std::size_t candidates = 200;
  bool no_verify = false;
};

struct VerifyArgs {
  std::string in;
  std::string cert;
  std::string out;
  bool arrangement = false;
};

struct DeepArgs {
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
  std::uint64_t budget = 50'000'000;
  std::size_t candidates = 200;
};

struct AngleArgs {
  std::string simplex;
  std::size_t dim = 3;
  std::size_t trials = 0;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
  std::string out;
};

struct BoundsArgs {
  std::string dims = "1..6";
  std::string out;
};

struct BenchArgs {
  std::string dims = "1..2";
  std::vector<std::size_t> sizes{6, 10};
  std::size_t runs = 3;
  std::uint64_t seed = 0;
  std::string shape = "uniform-ball";
  std::string out = "bench-results";
};

int cmd_gen(const GenArgs& args);
int cmd_select(const SelectArgs& args);
int cmd_verify(const VerifyArgs& args);
int cmd_deep(const DeepArgs& args);
int cmd_angle(const AngleArgs& args);
int cmd_bounds(const BoundsArgs& args);
int cmd_bench(const BenchArgs& args);

}  // namespace pachsel::cli
