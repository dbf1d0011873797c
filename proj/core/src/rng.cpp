#include "pcv/rng.hpp"

namespace pcv {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t fmix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  base_ = fmix64(seed ^ fmix64(stream * kGolden + 0x632be59bd9b4e019ULL));
  gamma_ = fmix64(stream + kGolden) | 1ULL;
}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return fmix64(base_ + counter_ * gamma_);
}

double RngStream::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  // Lemire's nearly-divisionless bounded sampler.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    std::uint64_t t = -n % n;
    while (lo < t) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

RngStream RngStream::substream(std::uint64_t id) const {
  return RngStream(seed_, fmix64(stream_ + kGolden * (id + 1)));
}

}  // namespace pcv
