#include <benchmark/benchmark.h>

#include <vector>

#include "sphcs/harness.hpp"
#include "sphcs/l1solve.hpp"
#include "sphcs/orthopoly.hpp"
#include "sphcs/ripcheck.hpp"
#include "sphcs/sensing.hpp"
#include "sphcs/spherical.hpp"

namespace {

using namespace sphcs;

void BM_EvalYRow(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const HarmonicBasis basis(d);
  std::vector<Complex> row(basis.size());
  double phi = 0.1;
  for (auto _ : state) {
    basis.eval_Y_row({phi, 1.0}, row);
    benchmark::DoNotOptimize(row.data());
    phi = phi < 3.0 ? phi + 1e-3 : 0.1;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(basis.size()));
}
BENCHMARK(BM_EvalYRow)->Arg(16)->Arg(32)->Arg(64);

void BM_BuildEnsemble(benchmark::State& state) {
  const auto samples = sample_points(static_cast<std::size_t>(state.range(1)),
                                     SamplingMeasure::kProduct, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_ensemble(static_cast<int>(state.range(0)), samples));
  }
}
BENCHMARK(BM_BuildEnsemble)->Args({16, 100})->Args({16, 250})->Args({32, 500});

void BM_SolveBpdn(benchmark::State& state) {
  TrialSpec spec;
  spec.sparsity = static_cast<std::size_t>(state.range(0));
  spec.samples = static_cast<std::size_t>(state.range(1));
  spec.noise_level = state.range(2) == 0 ? 0.0 : 1e-3;
  spec.seed = 7;
  int iterations = 0;
  for (auto _ : state) iterations = run_trial(spec).solver_iterations;
  state.counters["solver_iterations"] = iterations;
}
BENCHMARK(BM_SolveBpdn)
    ->Args({5, 100, 0})
    ->Args({5, 150, 1})
    ->Args({12, 120, 0})
    ->Unit(benchmark::kMillisecond);

void BM_WeightedSupAll(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        weighted_sup_all(JacobiParameter(static_cast<double>(state.range(0))), 200, 4096));
  }
}
BENCHMARK(BM_WeightedSupAll)->Arg(0)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ExactRip(benchmark::State& state) {
  const auto e = build_ensemble(4, sample_points(64, SamplingMeasure::kProduct, 3));
  const ComplexMatrix psi = isometry_normalized(e);
  for (auto _ : state) {
    benchmark::DoNotOptimize(restricted_isometry_constant(psi, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_ExactRip)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
