#include "pcv/bucketing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcv {

int num_buckets(std::uint64_t n, double tau) {
  if (n < 2) throw std::invalid_argument("num_buckets: need n >= 2");
  if (!(tau > 0.0) || tau > 1.0) throw std::invalid_argument("num_buckets: tau must be in (0,1]");
  double raw = std::log(static_cast<double>(n) / tau) / std::log1p(tau);
  int L = static_cast<int>(std::ceil(raw));
  // Snap to the exact integer condition (1+tau)^L >= n/tau.
  auto top = [&](int l) { return std::pow(1.0 + tau, l); };
  double target = static_cast<double>(n) / tau;
  while (top(L) < target) ++L;
  while (L > 1 && top(L - 1) >= target) --L;
  return L;
}

Bucketing::Bucketing(std::uint64_t n, double tau) : n_(n), tau_(tau) {
  L_ = num_buckets(n, tau);
  boundaries_.resize(static_cast<std::size_t>(L_) + 1);
  for (int l = 0; l <= L_; ++l) {
    boundaries_[static_cast<std::size_t>(l)] =
        tau * std::pow(1.0 + tau, l) / static_cast<double>(n);
  }
  boundaries_.back() = std::max(boundaries_.back(), 1.0);
  for (int l = 0; l < L_; ++l) {
    if (!(boundaries_[l] < boundaries_[l + 1])) {
      throw std::invalid_argument("Bucketing: boundaries not strictly increasing");
    }
  }
}

int Bucketing::bucket_of(double p) const {
  if (!(p >= 0.0) || p > 1.0) throw std::invalid_argument("bucket_of: p must be in [0,1]");
  if (p <= boundaries_[0]) return 0;
  double guess = std::log(p * static_cast<double>(n_) / tau_) / std::log1p(tau_);
  int l = static_cast<int>(std::ceil(guess));
  l = std::clamp(l, 1, L_);
  // +-1 correction against the stored boundaries.
  while (l > 0 && p <= boundaries_[static_cast<std::size_t>(l) - 1]) --l;
  while (l < L_ && p > boundaries_[static_cast<std::size_t>(l)]) ++l;
  return l;
}

ApproxHistogram approx_histogram(const Distribution& dist, double tau) {
  Bucketing bucketing(dist.n(), tau);
  std::vector<double> masses(static_cast<std::size_t>(bucketing.num_buckets_L()) + 1, 0.0);
  std::vector<double> counts(masses.size(), 0.0);
  for (Element x = 0; x < dist.n(); ++x) {
    int j = bucketing.bucket_of(dist[x]);
    masses[static_cast<std::size_t>(j)] += dist[x];
    counts[static_cast<std::size_t>(j)] += 1.0;
  }
  return ApproxHistogram{std::move(bucketing), std::move(masses), std::move(counts)};
}

ApproxHistogram histogram_from_masses(Bucketing bucketing, std::vector<double> masses) {
  if (masses.size() != static_cast<std::size_t>(bucketing.num_buckets_L()) + 1) {
    throw std::invalid_argument("histogram_from_masses: wrong mass vector length");
  }
  return ApproxHistogram{std::move(bucketing), std::move(masses), {}};
}

}  // namespace pcv
