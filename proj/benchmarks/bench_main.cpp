#include <benchmark/benchmark.h>

#include <random>

#include "pachsel/cones.hpp"
#include "pachsel/constructions.hpp"
#include "pachsel/deep_point.hpp"
#include "pachsel/pipeline.hpp"
#include "pachsel/predicates.hpp"

using namespace pachsel;

static void BM_Orientation(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto set = constructions::uniform_ball(d, 1, 1);
  const auto pts = set.all_points();
  for (auto _ : state) benchmark::DoNotOptimize(geometry::orientation(pts));
}
BENCHMARK(BM_Orientation)->DenseRange(2, 5);

static void BM_PointInSimplex(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto set = constructions::uniform_ball(d, 1, 2);
  const auto verts = set.all_points();
  const Point p = Point::origin(d);
  for (auto _ : state) benchmark::DoNotOptimize(geometry::point_in_simplex(p, verts, geometry::SimplexMode::Closed));
}
BENCHMARK(BM_PointInSimplex)->DenseRange(1, 4);

static void BM_RainbowDepth(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto set = constructions::uniform_ball(2, n, 3);
  const Point p = Point::origin(2);
  for (auto _ : state) benchmark::DoNotOptimize(selection::rainbow_depth(set, p));
  state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(BM_RainbowDepth)->RangeMultiplier(2)->Range(4, 16)->Complexity();

static void BM_MsaMonteCarlo(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::vector<cones::Vector> verts;
  for (std::size_t i = 0; i <= d; ++i) verts.push_back(cones::random_ball_point(rng, d));
  const auto simplex = cones::Simplex::from_doubles(verts);
  for (auto _ : state) benchmark::DoNotOptimize(cones::msa_mc(simplex, 10'000, 5).value);
}
BENCHMARK(BM_MsaMonteCarlo)->DenseRange(2, 4);

static void BM_Pipeline(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto set = constructions::uniform_ball(d, n, 6);
  selection::PipelineParams params;
  params.verify = false;
  for (auto _ : state) benchmark::DoNotOptimize(selection::run_pipeline(set, params).y.size());
}
BENCHMARK(BM_Pipeline)->Args({1, 10})->Args({2, 8})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
