#pragma once

#include <cstdint>

#include "pcv/rng.hpp"

namespace pcv {

struct LowerBoundCell {
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double violation_rate = 0.0;
  double bound = 0.0;  // 4 m / n^{1/3}
};

/// Draws a flat hard instance (support n^{2/3}/K or n^{2/3}, coin-chosen),
/// takes k upfront samples, issues m query pairs mixing sampled and uniform
/// elements, and counts how often a query touches a supported element that
/// was never sampled -- the one event where the sample-only simulation of
/// the pairwise oracle could answer differently from the real one.
bool lower_bound_trial(std::uint64_t n, std::uint64_t m, std::uint64_t k, double k_const,
                       RngStream& rng);

/// R independent trials; requires m, k <= c_prime * n^{1/3}.
LowerBoundCell lower_bound_experiment(std::uint64_t n, std::uint64_t m, std::uint64_t k,
                                      std::uint64_t trials, double k_const, double c_prime,
                                      std::uint64_t base_seed, int jobs = 1);

}  // namespace pcv
