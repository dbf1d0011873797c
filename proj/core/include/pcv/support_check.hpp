#pragma once

#include <cstdint>

#include "pcv/oracle.hpp"

namespace pcv {

enum class SupportAnswer { Yes, No, Fail };

/// T = ceil(log_{3/2}(1/beta)).
std::uint64_t is_in_support_trials(double beta);

struct SupportCheckResult {
  SupportAnswer answer = SupportAnswer::Fail;
  std::uint64_t queries_used = 0;
};

/// Membership check for y against a reference x_ref known to be in the
/// support: up to T pcond({x_ref, y}) queries, answering Yes on the first
/// response equal to y. On a nearly flat distribution a supported y is
/// missed with probability at most beta; an unsupported y is never accepted
/// (the oracle cannot return it).
SupportCheckResult is_in_support(PairOracle& oracle, Element x_ref, Element y, double beta);

}  // namespace pcv
