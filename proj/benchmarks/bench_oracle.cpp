#include <benchmark/benchmark.h>

#include "pcv/fixtures.hpp"
#include "pcv/oracle.hpp"

namespace {

pcv::Distribution zipf_fixture(std::uint64_t n) {
  pcv::Json params;
  params["exponent"] = 1.0;
  return pcv::generate_fixture("zipf", params, n, pcv::RngStream(0, 0));
}

void BM_Samp(benchmark::State& state) {
  pcv::Distribution d = zipf_fixture(static_cast<std::uint64_t>(state.range(0)));
  pcv::InstrumentedOracle oracle(d, pcv::RngStream(1, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.samp());
  }
}
BENCHMARK(BM_Samp)->Arg(10000)->Arg(1000000);

void BM_Pcond(benchmark::State& state) {
  pcv::Distribution d = zipf_fixture(10000);
  pcv::InstrumentedOracle oracle(d, pcv::RngStream(1, 0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.pcond(3, 1234));
  }
}
BENCHMARK(BM_Pcond);

void BM_PcondBatch(benchmark::State& state) {
  pcv::Distribution d = zipf_fixture(10000);
  pcv::InstrumentedOracle oracle(d, pcv::RngStream(1, 0));
  const std::uint64_t q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle.pcond_count_x(3, 1234, q));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(q));
}
BENCHMARK(BM_PcondBatch)->Arg(1024)->Arg(65536);

void BM_AliasBuild(benchmark::State& state) {
  pcv::Distribution d = zipf_fixture(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    pcv::InstrumentedOracle oracle(d, pcv::RngStream(1, 0));
    benchmark::DoNotOptimize(oracle.samp());
  }
}
BENCHMARK(BM_AliasBuild)->Arg(10000)->Arg(100000);

}  // namespace
