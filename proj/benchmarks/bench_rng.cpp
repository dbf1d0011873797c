#include <benchmark/benchmark.h>

#include "pcv/rng.hpp"

namespace {

void BM_RngNextU64(benchmark::State& state) {
  pcv::RngStream rng(1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.next_u64());
  }
}
BENCHMARK(BM_RngNextU64);

void BM_RngNextBelow(benchmark::State& state) {
  pcv::RngStream rng(1, 2);
  const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.next_below(n));
  }
}
BENCHMARK(BM_RngNextBelow)->Arg(1000)->Arg(1000000);

void BM_RngSubstream(benchmark::State& state) {
  pcv::RngStream rng(1, 2);
  std::uint64_t id = 0;
  for (auto _ : state) {
    pcv::RngStream sub = rng.substream(id++);
    benchmark::DoNotOptimize(sub.next_u64());
  }
}
BENCHMARK(BM_RngSubstream);

}  // namespace

BENCHMARK_MAIN();
