#include "pcv/distribution.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pcv {

double stable_sum(const std::vector<double>& xs) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : xs) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw std::invalid_argument("Distribution: empty domain");
  }
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("Distribution: negative or non-finite mass");
    }
  }
  double total = stable_sum(probs_);
  if (std::abs(total - 1.0) > kMassTolerance) {
    throw std::invalid_argument("Distribution: masses sum to " + std::to_string(total) +
                                ", expected 1 within 1e-12");
  }
}

std::uint64_t Distribution::support_size() const {
  std::uint64_t count = 0;
  for (double p : probs_) count += (p > 0.0);
  return count;
}

std::vector<Element> Distribution::support() const {
  std::vector<Element> out;
  out.reserve(support_size());
  for (Element x = 0; x < probs_.size(); ++x) {
    if (probs_[x] > 0.0) out.push_back(x);
  }
  return out;
}

double Distribution::flatness_ratio() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double p : probs_) {
    if (p > 0.0) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
  }
  if (hi == 0.0) throw std::invalid_argument("flatness_ratio: empty support");
  return hi / lo;
}

}  // namespace pcv
