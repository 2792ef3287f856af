#include <benchmark/benchmark.h>

#include "pang/dataset_io.hpp"
#include "pang/miner.hpp"

namespace {

const pang::LabeledCollection& mutag() {
  static const auto collection = pang::read_benchmark(PANG_DATA_DIR "/MUTAG");
  return collection;
}

// Args: pattern cap (vertices = edges), minsup in percent.
void BM_MineMutag(benchmark::State& state) {
  pang::MinerOptions options;
  options.max_vertices = options.max_edges = static_cast<std::size_t>(state.range(0));
  options.minsup = pang::MinSupport::relative(static_cast<double>(state.range(1)) / 100.0);
  std::size_t found = 0;
  for (auto _ : state) {
    const auto mined = pang::mine(mutag(), options);
    found = mined.size();
    benchmark::DoNotOptimize(mined.data());
  }
  state.counters["patterns"] = static_cast<double>(found);
}
BENCHMARK(BM_MineMutag)->Args({5, 10})->Args({10, 10})->Args({10, 5})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
