#pragma once

#include <cstdint>
#include <variant>

#include "pcv/oracle.hpp"

namespace pcv {

/// Outcome of the pairwise ratio comparison: the ratio is declared far above
/// the band (High), far below it (Low), estimated to within gamma, or the
/// query pair had zero mass (Fail -> enclosing protocol rejects).
struct CompareOutcome {
  enum class Kind { High, Low, Estimate, Fail };
  Kind kind = Kind::Fail;
  double alpha = 0.0;  // valid when kind == Estimate; always > 0

  bool is_high() const { return kind == Kind::High; }
  bool is_low() const { return kind == Kind::Low; }
  bool is_estimate() const { return kind == Kind::Estimate; }
  bool failed() const { return kind == Kind::Fail; }
};

/// Deterministic query count of compare(): ceil(2 (K+1)^4 ln(2/beta) / gamma^2).
std::uint64_t compare_query_count(double K, double gamma, double beta);

/// Estimates probs[x]/probs[y] from pcond({x,y}) frequencies.
///
/// Makes exactly compare_query_count(K, gamma, beta) queries; with
/// probability >= 1-beta the outcome obeys: ratio > K -> High or an estimate
/// within gamma; ratio < 1/K -> Low or an estimate within gamma; ratio in
/// [1/K, K] -> an estimate within gamma. The High/Low cut-offs sit half a
/// Hoeffding deviation outside K/(K+1) and 1/(K+1), so a ratio exactly at K
/// still yields an estimate rather than High.
CompareOutcome compare(PairOracle& oracle, Element x, Element y, double gamma, double beta,
                       double K);

}  // namespace pcv
