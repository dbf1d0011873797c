#include "pcv/compare.hpp"

#include <cmath>
#include <stdexcept>

namespace pcv {

std::uint64_t compare_query_count(double K, double gamma, double beta) {
  if (!(K >= 1.0)) throw std::invalid_argument("compare: K must be >= 1");
  if (!(gamma > 0.0) || gamma > 1.0) throw std::invalid_argument("compare: gamma must be in (0,1]");
  if (!(beta > 0.0) || beta > 1.0) throw std::invalid_argument("compare: beta must be in (0,1]");
  double k1 = K + 1.0;
  double q = 2.0 * k1 * k1 * k1 * k1 * std::log(2.0 / beta) / (gamma * gamma);
  return static_cast<std::uint64_t>(std::ceil(q));
}

CompareOutcome compare(PairOracle& oracle, Element x, Element y, double gamma, double beta,
                       double K) {
  if (x == y) throw std::invalid_argument("compare: x and y must differ");
  const std::uint64_t q = compare_query_count(K, gamma, beta);
  std::uint64_t count_x = 0;
  try {
    count_x = oracle.pcond_count_x(x, y, q);
  } catch (const std::runtime_error&) {
    return CompareOutcome{CompareOutcome::Kind::Fail, 0.0};
  }
  const double p_hat = static_cast<double>(count_x) / static_cast<double>(q);
  const double k1 = K + 1.0;
  // Hoeffding deviation of p_hat at the beta confidence level under the
  // query-count formula. The decision bands sit one deviation outside
  // K/(K+1) and 1/(K+1): a ratio exactly at K then crosses into High with
  // probability at most beta/2, while a ratio beyond the band still ends in
  // High/Low (or an estimate that is within gamma) with probability 1-beta.
  const double eps = gamma / (2.0 * k1 * k1);
  if (p_hat > K / k1 + eps) return CompareOutcome{CompareOutcome::Kind::High, 0.0};
  if (p_hat < 1.0 / k1 - eps) return CompareOutcome{CompareOutcome::Kind::Low, 0.0};
  return CompareOutcome{CompareOutcome::Kind::Estimate, p_hat / (1.0 - p_hat)};
}

}  // namespace pcv
