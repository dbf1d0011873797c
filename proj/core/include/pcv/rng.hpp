#pragma once

#include <cstdint>

namespace pcv {

/// Counter-based splittable generator. A stream is addressed by
/// (seed, stream id); identical addresses replay the identical sequence,
/// and distinct stream ids give statistically independent sequences.
///
/// The core is SplitMix64: output n is fmix64(base + n * gamma) with a
/// per-stream odd gamma, so streams never share state and a stream can be
/// re-created mid-experiment from its address alone.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}

  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double();

  /// Uniform in [0, n). Lemire multiply-shift with rejection; n >= 1.
  std::uint64_t next_below(std::uint64_t n);

  bool bernoulli(double p) { return next_double() < p; }

  /// Independent child stream; deterministic function of (seed, stream, id).
  RngStream substream(std::uint64_t id) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t base_ = 0;
  std::uint64_t gamma_ = 0x9e3779b97f4a7c15ULL;
  std::uint64_t counter_ = 0;
};

}  // namespace pcv
