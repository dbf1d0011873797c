#include <benchmark/benchmark.h>

#include <vector>

#include "pcv/distances.hpp"
#include "pcv/fixtures.hpp"

namespace {

pcv::Distribution random_dist(std::uint64_t n, std::uint64_t seed) {
  pcv::RngStream rng(seed, 0);
  std::vector<double> w(n);
  for (auto& x : w) x = rng.next_double() + 1e-9;
  double total = pcv::stable_sum(w);
  for (auto& x : w) x /= total;
  w[0] += 1.0 - pcv::stable_sum(w);
  return pcv::Distribution(std::move(w));
}

void BM_RlDistance(benchmark::State& state) {
  auto n = static_cast<std::uint64_t>(state.range(0));
  pcv::Distribution a = random_dist(n, 1);
  pcv::Distribution b = random_dist(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcv::rl_distance(a, b));
  }
}
BENCHMARK(BM_RlDistance)->Arg(1000)->Arg(100000);

void BM_ApproxHistogram(benchmark::State& state) {
  auto n = static_cast<std::uint64_t>(state.range(0));
  pcv::Distribution d = random_dist(n, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcv::approx_histogram(d, 0.1));
  }
}
BENCHMARK(BM_ApproxHistogram)->Arg(1000)->Arg(100000);

void BM_EmdHistograms(benchmark::State& state) {
  auto n = static_cast<std::uint64_t>(state.range(0));
  pcv::ApproxHistogram a = pcv::approx_histogram(random_dist(n, 4), 0.05);
  pcv::ApproxHistogram b = pcv::approx_histogram(random_dist(n, 5), 0.05);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcv::emd_histograms(a, b, pcv::EmdWeightMode::kCounts));
  }
}
BENCHMARK(BM_EmdHistograms)->Arg(10000);

}  // namespace
