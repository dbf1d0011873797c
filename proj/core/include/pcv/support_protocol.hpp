#pragma once

#include <cstdint>
#include <stdexcept>

#include "pcv/oracle.hpp"
#include "pcv/profile.hpp"
#include "pcv/prover.hpp"
#include "pcv/rng.hpp"

namespace pcv {

enum class Decision { Accept, Reject };

/// Bits to transmit one domain element / one bucket tag / one index among k.
std::uint64_t element_bits(std::uint64_t n);
std::uint64_t index_bits(std::uint64_t k);

/// Claimed support-size window A' < A <= |supp| <= B < B'.
struct SupportClaim {
  std::int64_t a_lo_strict;  // A'
  std::int64_t a_lo;         // A
  std::int64_t b_hi;         // B
  std::int64_t b_hi_strict;  // B'

  void validate(std::uint64_t n) const;
  SupportContext context() const {
    return SupportContext{std::nullopt, static_cast<double>(a_lo_strict),
                          static_cast<double>(a_lo), static_cast<double>(b_hi),
                          static_cast<double>(b_hi_strict)};
  }
};

/// Single-run rejection probabilities of an elementary test, its gap, and
/// the derived amplification plan (trial count and reject-count threshold).
struct RejectionProfile {
  double p_reject;   // completeness-side rejection bound
  double q_reject;   // soundness-side rejection bound
  double delta_gap;  // q - p, must be positive
  std::uint64_t trials;
  double threshold;  // reject-fraction cut: accept iff rejects < threshold * trials
};

/// Closed forms with c = (A-A')/(2A): p = (1+c^2) e^{-c}, q = 1 - c + 2c^2,
/// T = ceil(2 ln(2/delta) / gap^2), threshold = p + gap/2.
RejectionProfile rejection_profile_test1(double a_lo, double a_lo_strict, double delta);

/// Closed forms with c = (B'-B)/(18B'), lambda = B/B': p = c*lambda/2 +
/// c^2*lambda, q = (1/2)(1-e^{-c}) / (1 + (3/4)(1-lambda)/lambda).
RejectionProfile rejection_profile_test2(double b_hi, double b_hi_strict, double delta);

/// Amplification profiles evaluated at the integer per-run sample count the
/// tests actually use (the closed forms above assume the unrounded count,
/// which the rounding can overshoot by a lot when c*N/A is small). These
/// exact binomial bounds drive the thresholds of the amplified protocols.
RejectionProfile amplifier_profile_test1(std::uint64_t n, double a_lo, double a_lo_strict,
                                         double delta, const ConstantsProfile& profile);
RejectionProfile amplifier_profile_test2(std::uint64_t n, double b_hi, double b_hi_strict,
                                         double alpha, double delta,
                                         const ConstantsProfile& profile);

struct RunResult {
  Decision decision = Decision::Reject;
  OracleStats declared;  // cost this run claims to have incurred
};

/// One round of the small-support detector: s = ceil(c N / A) uniform domain
/// elements go to the prover, who must exhibit one inside the support; the
/// verifier re-checks the exhibit against x_ref.
RunResult test1_large(PairOracle& oracle, ProverStrategy& prover, Element x_ref,
                      const SupportContext& ctx, RngStream& verifier_rng);

/// One round of the large-support detector: the verifier hides one real
/// sample among s = ceil(c N / B') uniform elements and the prover must name
/// its position in the shuffled tuple.
RunResult test2_large(PairOracle& oracle, ProverStrategy& prover, const SupportContext& ctx,
                      RngStream& verifier_rng);

struct AmplifiedResult {
  Decision decision = Decision::Reject;
  OracleStats declared;
  std::uint64_t test1_rejects = 0;
  std::uint64_t test1_trials = 0;
  std::uint64_t test2_rejects = 0;
  std::uint64_t test2_trials = 0;
};

/// Sequentially amplified pair of tests deciding A <= |supp| <= B against
/// |supp| <= A' or >= B', for (1+alpha)-flat distributions with
/// alpha <= (3/2)(B'-B)/B. Completeness/soundness error ~ delta at unscaled
/// trial counts.
AmplifiedResult verify_support_large(PairOracle& oracle, ProverStrategy& prover,
                                     const SupportContext& ctx, double alpha, double delta,
                                     const ConstantsProfile& profile, RngStream& verifier_rng);

struct SmallSupportParams {
  std::uint64_t s1;  // membership spot-checks of claimed elements
  std::uint64_t s2;  // containment checks of real samples

  static SmallSupportParams derive(const SupportContext& ctx, double alpha, double delta_s,
                                   const ConstantsProfile& profile);
};

struct SmallSupportResult {
  Decision decision = Decision::Reject;
  OracleStats declared;
  std::string reject_reason;  // empty on accept
};

/// Non-interactive small-support protocol: the prover ships its claimed
/// support outright; the verifier spot-checks claimed elements for
/// membership and real samples for containment.
SmallSupportResult verify_support_small(PairOracle& oracle, ProverStrategy& prover,
                                        const SupportContext& ctx, double alpha, double delta_c,
                                        double delta_s, const ConstantsProfile& profile,
                                        RngStream& verifier_rng);

}  // namespace pcv
