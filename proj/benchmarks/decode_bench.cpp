#include <benchmark/benchmark.h>

#include "gkpqpc/experiment.hpp"
#include "gkpqpc/oracle.hpp"
#include "gkpqpc/qpc.hpp"
#include "gkpqpc/rng.hpp"
#include "gkpqpc/wrapped_noise.hpp"

using namespace gkpqpc;

namespace {

OutcomeGrid random_grid(QpcShape shape, RandomStream& stream) {
  OutcomeGrid grid(shape);
  for (int i = 0; i < shape.total(); ++i) {
    const double u = stream.next_uniform();
    grid.set_cell(i, u < 0.55 ? HrmOutcome::KeepPlus
                              : (u < 0.8 ? HrmOutcome::KeepMinus : HrmOutcome::Discard));
  }
  return grid;
}

void BM_DecodeX(benchmark::State& state) {
  const QpcShape shape = QpcShape::make(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(1)));
  RandomStream stream(1);
  const OutcomeGrid grid = random_grid(shape, stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode_x(grid));
  }
  state.SetItemsProcessed(state.iterations() * shape.total());
}

void BM_DecodeZ(benchmark::State& state) {
  const QpcShape shape = QpcShape::make(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(1)));
  RandomStream stream(2);
  const OutcomeGrid grid = random_grid(shape, stream);
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode_z(grid));
  }
  state.SetItemsProcessed(state.iterations() * shape.total());
}

void BM_RunTrial(benchmark::State& state) {
  const TrialConfig config{QpcShape::make(static_cast<int>(state.range(0)),
                                          static_cast<int>(state.range(1))),
                           NoiseParams::from_std(0.6), HrmParams::from_delta(0.3), 1, 42};
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_trial(config, trial++));
  }
  state.SetItemsProcessed(state.iterations() * config.shape.total());
}

void BM_WrappedPdf(benchmark::State& state) {
  const NoiseParams noise = NoiseParams::from_std(0.607);
  double u = -1.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wrapped_pdf(u, noise));
    u += 0.001;
    if (u > 1.5) u = -1.5;
  }
}

void BM_ExactFailure(benchmark::State& state) {
  const QpcShape shape = QpcShape::make(static_cast<int>(state.range(0)),
                                        static_cast<int>(state.range(1)));
  const OutcomeProbabilities probs =
      outcome_probabilities(NoiseParams::from_std(0.6), 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_failure(shape, probs));
  }
}

}  // namespace

BENCHMARK(BM_DecodeX)->Args({5, 2})->Args({10, 10})->Args({25, 40})->Args({100, 100});
BENCHMARK(BM_DecodeZ)->Args({5, 2})->Args({10, 10})->Args({25, 40})->Args({100, 100});
BENCHMARK(BM_RunTrial)->Args({3, 3})->Args({5, 4})->Args({9, 5})->Args({25, 40});
BENCHMARK(BM_WrappedPdf);
BENCHMARK(BM_ExactFailure)->Args({2, 2})->Args({3, 4})->Args({4, 4});

BENCHMARK_MAIN();
