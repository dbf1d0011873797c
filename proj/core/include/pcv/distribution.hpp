#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pcv {

using Element = std::uint32_t;

/// Explicit probability mass function over the domain {0, ..., n-1}.
/// Entries are non-negative and sum to 1 within 1e-12; both are checked at
/// construction. Immutable afterwards and safe to share across threads.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  std::uint64_t n() const { return probs_.size(); }
  double operator[](Element x) const { return probs_[x]; }
  const std::vector<double>& probs() const { return probs_; }

  std::uint64_t support_size() const;
  std::vector<Element> support() const;

  /// max/min over support probabilities; 1.0 for flat, inf convention not
  /// needed since support entries are strictly positive.
  double flatness_ratio() const;

  static constexpr double kMassTolerance = 1e-12;

 private:
  std::vector<double> probs_;
};

/// Compensated (Kahan) sum; distribution checks and generators use this so a
/// million tiny entries still land within the mass tolerance.
double stable_sum(const std::vector<double>& xs);

}  // namespace pcv
