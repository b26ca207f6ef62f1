// Serial reference vs OpenMP for the two hot loops: the per-direction
// congruence sweep and the convexity residual. Thread count is the benchmark
// argument; compare against the matching *_serial row.

#include <benchmark/benchmark.h>

#include "congruent/kernels.hpp"
#include "congruent/sampling.hpp"

namespace {

using namespace congruent;

const EllipsoidSpec& base3() {
  static const EllipsoidSpec e({3, 2, 1});
  return e;
}

struct SweepFixture {
  BodyPair pair = BodyPair::make(base3(), {0.4, 0.01}, Flavor::kRadial);
  std::vector<Vec> dirs = sample_sphere(3, 1000, 7);
  SubsphereLattice lattice{2, 10000};
};

const SweepFixture& sweep_fixture() {
  static const SweepFixture f;
  return f;
}

void BM_sweep_serial(benchmark::State& state) {
  const auto& f = sweep_fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::sweep_directions_serial(f.pair, f.dirs, Group::kO, f.lattice));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.dirs.size()));
}

void BM_sweep_omp(benchmark::State& state) {
  const auto& f = sweep_fixture();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::sweep_directions_omp(f.pair, f.dirs, Group::kO, f.lattice, threads));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.dirs.size()));
}

const std::vector<Vec>& convexity_dirs() {
  static const std::vector<Vec> d = sample_sphere(3, 4000, 0xc0417e8ULL);
  return d;
}

void BM_radial_convexity_serial(benchmark::State& state) {
  const BodySpec k(base3(), {0.4, 0.01}, Variant::kK, Flavor::kRadial);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::radial_convexity_serial(k, convexity_dirs()));
  }
}

void BM_radial_convexity_omp(benchmark::State& state) {
  const BodySpec k(base3(), {0.4, 0.01}, Variant::kK, Flavor::kRadial);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::radial_convexity_omp(k, convexity_dirs(), threads));
  }
}

void BM_support_convexity_serial(benchmark::State& state) {
  const BodySpec k(base3(), {0.4, 0.01}, Variant::kK, Flavor::kSupport);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::support_convexity_serial(k, convexity_dirs()));
  }
}

void BM_support_convexity_omp(benchmark::State& state) {
  const BodySpec k(base3(), {0.4, 0.01}, Variant::kK, Flavor::kSupport);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::support_convexity_omp(k, convexity_dirs(), threads));
  }
}

}  // namespace

BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_sweep_omp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_radial_convexity_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_radial_convexity_omp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_support_convexity_serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_support_convexity_omp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
