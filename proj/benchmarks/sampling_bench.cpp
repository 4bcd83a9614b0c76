#include <benchmark/benchmark.h>

#include "nerd/sampling.hpp"
#include "nerd/walks.hpp"
#include "support/graphs.hpp"

namespace {

using namespace nerd;

void BM_AliasBuild(benchmark::State& state) {
  Rng rng(1);
  std::vector<double> w(static_cast<std::size_t>(state.range(0)));
  for (auto& x : w) x = uniform01(rng);
  for (auto _ : state) benchmark::DoNotOptimize(AliasTable(w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AliasBuild)->Range(1 << 10, 1 << 20);

void BM_AliasSample(benchmark::State& state) {
  Rng rng(2);
  std::vector<double> w(static_cast<std::size_t>(state.range(0)));
  for (auto& x : w) x = uniform01(rng);
  const AliasTable table(w);
  for (auto _ : state) benchmark::DoNotOptimize(table.sample(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AliasSample)->Range(1 << 4, 1 << 20);

void BM_AlternatingWalk(benchmark::State& state) {
  Rng gen(3);
  const auto g = testing::random_weighted(10'000, 100'000, gen);
  const AlternatingWalker walker(g);
  const int pairs = static_cast<int>(state.range(0));
  Rng rng(4);
  std::vector<NodeId> nodes;
  for (auto _ : state) {
    walker.sample_into(WalkKind::source_walk, pairs, rng, nodes);
    benchmark::DoNotOptimize(nodes.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AlternatingWalk)->Arg(1)->Arg(10);

void BM_WalkerBuild(benchmark::State& state) {
  Rng gen(5);
  const auto g = testing::random_weighted(static_cast<std::size_t>(state.range(0)), 10 * static_cast<std::size_t>(state.range(0)), gen);
  for (auto _ : state) benchmark::DoNotOptimize(AlternatingWalker(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_WalkerBuild)->Arg(1'000)->Arg(10'000)->Unit(benchmark::kMillisecond);

}  // namespace
