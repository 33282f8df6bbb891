#include <benchmark/benchmark.h>

#include <pinnedgeo/jacobi.hpp>
#include <pinnedgeo/lift.hpp>
#include <pinnedgeo/measures.hpp>

using namespace pinnedgeo;

static void BM_ExpMap(benchmark::State& state) {
  const auto m = CurvatureModel::hyperbolic(static_cast<int>(state.range(0)), 1.0);
  FramePoint fp = origin_frame(m);
  Vec v = Vec::Constant(m.dim, 0.1);
  for (auto _ : state) {
    fp = exp_map(m, fp, v);
    v = -v;
    benchmark::DoNotOptimize(fp.point.data());
  }
}
BENCHMARK(BM_ExpMap)->Arg(2)->Arg(3)->Arg(7);

static void BM_BuildFamily(benchmark::State& state) {
  const auto m = CurvatureModel::hyperbolic(3, 1.0);
  const Partition p(static_cast<int>(state.range(0)));
  const BrokenGeodesic path = sample_nu1P(m, p, 1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(build_family(m, path).K.back().data());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildFamily)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void BM_PinnedSample(benchmark::State& state) {
  const auto m = CurvatureModel::hyperbolic(3, 1.0);
  const Partition p(static_cast<int>(state.range(0)));
  const Vec x = point_from_origin(m, Vec::Unit(3, 0), 1.0);
  std::uint64_t s = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pinned_sample(m, p, x, 1, s++).log_weight);
}
BENCHMARK(BM_PinnedSample)->Arg(4)->Arg(32)->Arg(128);

static void BM_LiftBuild(benchmark::State& state) {
  const auto m = CurvatureModel::hyperbolic(2, 1.0);
  const Partition p(static_cast<int>(state.range(0)));
  const JacobiFamily fam = build_family(m, sample_nu1P(m, p, 1, 0));
  const Vec H = Vec::Unit(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(lift_build(fam, H).v.data());
}
BENCHMARK(BM_LiftBuild)->Arg(16)->Arg(64);
BENCHMARK_MAIN();
