#include <benchmark/benchmark.h>

#include "pang/dataset_io.hpp"
#include "pang/matcher.hpp"
#include "pang/miner.hpp"

namespace {

struct Fixture {
  pang::LabeledCollection collection;
  std::vector<pang::Pattern> patterns;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture out{pang::read_benchmark(PANG_DATA_DIR "/MUTAG"), {}};
    pang::MinerOptions options;
    options.minsup = pang::MinSupport::relative(0.1);
    options.max_vertices = 6;
    options.max_edges = 6;
    for (auto& m : pang::mine(out.collection, options)) out.patterns.push_back(std::move(m.pattern));
    return out;
  }();
  return f;
}

// Every frequent pattern against every MUTAG graph.
void BM_CountAll(benchmark::State& state) {
  const auto& f = fixture();
  const auto mode = state.range(0) == 0 ? pang::MatchMode::General : pang::MatchMode::Induced;
  std::vector<pang::PatternMatcher> matchers;
  for (const auto& p : f.patterns) matchers.emplace_back(p);
  for (auto _ : state) {
    std::uint64_t total = 0;
    for (const auto& m : matchers) {
      for (const auto& g : f.collection.graphs()) total += m.count(g, mode);
    }
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(matchers.size() * f.collection.size()));
  state.SetLabel(state.range(0) == 0 ? "general" : "induced");
}
BENCHMARK(BM_CountAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExistsAll(benchmark::State& state) {
  const auto& f = fixture();
  std::vector<pang::PatternMatcher> matchers;
  for (const auto& p : f.patterns) matchers.emplace_back(p);
  for (auto _ : state) {
    std::size_t hits = 0;
    for (const auto& m : matchers) {
      for (const auto& g : f.collection.graphs()) hits += m.exists(g, pang::MatchMode::General) ? 1 : 0;
    }
    benchmark::DoNotOptimize(hits);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(matchers.size() * f.collection.size()));
}
BENCHMARK(BM_ExistsAll)->Unit(benchmark::kMillisecond);

}  // namespace
