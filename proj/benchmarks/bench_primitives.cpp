#include <benchmark/benchmark.h>

#include "pcv/compare.hpp"
#include "pcv/fixtures.hpp"
#include "pcv/oracle.hpp"
#include "pcv/support_check.hpp"

namespace {

pcv::Distribution flat_fixture(std::uint64_t n, std::uint64_t support) {
  pcv::Json params;
  params["support"] = support;
  return pcv::generate_fixture("flat", params, n, pcv::RngStream(0, 0));
}

void BM_Compare(benchmark::State& state) {
  pcv::Distribution d = flat_fixture(10000, 5000);
  pcv::InstrumentedOracle oracle(d, pcv::RngStream(1, 0));
  const double gamma = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcv::compare(oracle, 0, 1, gamma, 0.05, 2.0));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(pcv::compare_query_count(2.0, gamma, 0.05)));
}
BENCHMARK(BM_Compare)->Arg(10)->Arg(20);

void BM_IsInSupport(benchmark::State& state) {
  pcv::Distribution d = flat_fixture(10000, 5000);
  pcv::InstrumentedOracle oracle(d, pcv::RngStream(1, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pcv::is_in_support(oracle, 0, 4999, 0.01));
  }
}
BENCHMARK(BM_IsInSupport);

}  // namespace
