#include "revolv/counterexamples.hpp"
#include "revolv/functionals.hpp"

#include <benchmark/benchmark.h>

using namespace revolv;

namespace {

const BodyOfRevolution& klee() {
  static const BodyOfRevolution body = build_klee_body();
  return body;
}

const BodyOfRevolution& pair_plus() {
  static const BodyOfRevolution body = build_bonnesen_pair(6).plus;
  return body;
}

void BM_SectionVolumeBall(benchmark::State& state) {
  const BodyOfRevolution ball = BodyOfRevolution::ball(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(section_volume(ball, 0.7, 0.2));
}
BENCHMARK(BM_SectionVolumeBall)->Arg(4)->Arg(6);

void BM_SectionVolumePerturbed(benchmark::State& state) {
  const BodyOfRevolution& body = pair_plus();
  for (auto _ : state) benchmark::DoNotOptimize(section_volume(body, 0.7, -0.2));
}
BENCHMARK(BM_SectionVolumePerturbed);

void BM_MaximalSection(benchmark::State& state) {
  const BodyOfRevolution& body = state.range(0) == 0 ? klee() : pair_plus();
  for (auto _ : state) benchmark::DoNotOptimize(maximal_section(body, 1.3).volume);
}
BENCHMARK(BM_MaximalSection)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Projection(benchmark::State& state) {
  const BodyOfRevolution& body = state.range(0) == 0 ? klee() : pair_plus();
  for (auto _ : state) benchmark::DoNotOptimize(projection(body, 1.3));
}
BENCHMARK(BM_Projection)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_SolveMoments(benchmark::State& state) {
  const MomentSystem sys = MomentSystem::standard(static_cast<int>(state.range(0)), 1e-4);
  for (auto _ : state) benchmark::DoNotOptimize(solve_moments(sys).coefficients);
}
BENCHMARK(BM_SolveMoments)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
