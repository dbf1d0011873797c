#include "pcv/lower_bound.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_set>
#include <vector>

#include "pcv/fixtures.hpp"

namespace pcv {

bool lower_bound_trial(std::uint64_t n, std::uint64_t m, std::uint64_t k, double k_const,
                       RngStream& rng) {
  const bool yes_instance = rng.bernoulli(0.5);
  auto support_size = static_cast<std::uint64_t>(
      std::llround(std::pow(static_cast<double>(n), 2.0 / 3.0) / (yes_instance ? k_const : 1.0)));
  support_size = std::max<std::uint64_t>(1, std::min(support_size, n));

  std::vector<Element> support = sample_distinct(n, support_size, rng);
  std::unordered_set<Element> in_support(support.begin(), support.end());

  std::vector<Element> samples(k);
  std::unordered_set<Element> sampled;
  sampled.reserve(k * 2);
  for (auto& s : samples) {
    s = support[static_cast<std::size_t>(rng.next_below(support.size()))];
    sampled.insert(s);
  }

  auto query_point = [&]() -> Element {
    if (k > 0 && rng.bernoulli(0.5)) {
      return samples[static_cast<std::size_t>(rng.next_below(samples.size()))];
    }
    return static_cast<Element>(rng.next_below(n));
  };
  auto violates = [&](Element z) { return in_support.contains(z) && !sampled.contains(z); };

  for (std::uint64_t i = 0; i < m; ++i) {
    if (violates(query_point()) || violates(query_point())) return true;
  }
  return false;
}

LowerBoundCell lower_bound_experiment(std::uint64_t n, std::uint64_t m, std::uint64_t k,
                                      std::uint64_t trials, double k_const, double c_prime,
                                      std::uint64_t base_seed, int jobs) {
  if (trials == 0) throw std::invalid_argument("lower_bound_experiment: need trials >= 1");
  double budget = c_prime * std::cbrt(static_cast<double>(n));
  if (static_cast<double>(m) > budget || static_cast<double>(k) > budget) {
    throw std::invalid_argument("lower_bound_experiment: m, k must be <= c_prime * n^{1/3}");
  }

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> violations{0};
  auto worker = [&]() {
    std::uint64_t local = 0;
    for (std::uint64_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
      RngStream rng(base_seed, t);
      local += lower_bound_trial(n, m, k, k_const, rng);
    }
    violations.fetch_add(local);
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  LowerBoundCell cell;
  cell.trials = trials;
  cell.violations = violations.load();
  cell.violation_rate = static_cast<double>(cell.violations) / static_cast<double>(trials);
  cell.bound = 4.0 * static_cast<double>(m) / std::cbrt(static_cast<double>(n));
  return cell;
}

}  // namespace pcv
