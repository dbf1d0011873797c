#include "pcv/support_check.hpp"

#include <cmath>
#include <stdexcept>

namespace pcv {

std::uint64_t is_in_support_trials(double beta) {
  if (!(beta > 0.0) || beta >= 1.0) {
    throw std::invalid_argument("is_in_support: beta must be in (0,1)");
  }
  return static_cast<std::uint64_t>(std::ceil(std::log(1.0 / beta) / std::log(1.5)));
}

SupportCheckResult is_in_support(PairOracle& oracle, Element x_ref, Element y, double beta) {
  const std::uint64_t trials = is_in_support_trials(beta);
  SupportCheckResult result;
  for (std::uint64_t t = 0; t < trials; ++t) {
    PcondResult r = oracle.pcond(x_ref, y);
    ++result.queries_used;
    if (!r.has_value()) {
      result.answer = SupportAnswer::Fail;
      return result;
    }
    if (*r == y) {
      result.answer = SupportAnswer::Yes;
      return result;
    }
  }
  result.answer = SupportAnswer::No;
  return result;
}

}  // namespace pcv
