#include "pcv/support_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <vector>

#include "pcv/support_check.hpp"

namespace pcv {

std::uint64_t element_bits(std::uint64_t n) {
  std::uint64_t bits = 1;
  while ((1ULL << bits) < n) ++bits;
  return bits;
}

std::uint64_t index_bits(std::uint64_t k) { return element_bits(k); }

void SupportClaim::validate(std::uint64_t n) const {
  if (!(a_lo_strict < a_lo && a_lo <= b_hi && b_hi < b_hi_strict &&
        b_hi_strict <= static_cast<std::int64_t>(n) && a_lo_strict >= 0)) {
    throw std::invalid_argument("SupportClaim: need 0 <= A' < A <= B < B' <= N");
  }
}

namespace {

std::uint64_t amplification_trials(double delta, double gap, double scale) {
  double raw = 2.0 * std::log(2.0 / delta) / (gap * gap);
  return ConstantsProfile::scaled_count(raw, scale);
}

RejectionProfile make_profile(double p, double q, double delta, double scale) {
  if (!(q > p)) {
    throw std::invalid_argument("RejectionProfile: soundness bound must exceed completeness bound");
  }
  RejectionProfile prof{};
  prof.p_reject = p;
  prof.q_reject = q;
  prof.delta_gap = q - p;
  prof.trials = amplification_trials(delta, prof.delta_gap, scale);
  prof.threshold = p + 0.5 * prof.delta_gap;
  return prof;
}

double test1_c(double a_lo, double a_lo_strict) {
  if (!(a_lo_strict < a_lo) || !(a_lo > 0.0)) {
    throw std::invalid_argument("test1: need 0 < A' < A");
  }
  return (a_lo - a_lo_strict) / (2.0 * a_lo);
}

double test2_c(double b_hi, double b_hi_strict) {
  if (!(b_hi < b_hi_strict) || !(b_hi > 0.0)) {
    throw std::invalid_argument("test2: need 0 < B < B'");
  }
  return (b_hi_strict - b_hi) / (18.0 * b_hi_strict);
}

std::uint64_t test1_draws(std::uint64_t n, double a_lo, double a_lo_strict) {
  double c = test1_c(a_lo, a_lo_strict);
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(c * static_cast<double>(n) / a_lo)));
}

std::uint64_t test2_draws(std::uint64_t n, double b_hi, double b_hi_strict) {
  double c = test2_c(b_hi, b_hi_strict);
  return static_cast<std::uint64_t>(
      std::max(1.0, std::ceil(c * static_cast<double>(n) / b_hi_strict)));
}

}  // namespace

RejectionProfile rejection_profile_test1(double a_lo, double a_lo_strict, double delta) {
  double c = test1_c(a_lo, a_lo_strict);
  double p = (1.0 + c * c) * std::exp(-c);
  double q = 1.0 - c + 2.0 * c * c;
  return make_profile(p, q, delta, 1.0);
}

RejectionProfile rejection_profile_test2(double b_hi, double b_hi_strict, double delta) {
  double c = test2_c(b_hi, b_hi_strict);
  double lambda = b_hi / b_hi_strict;
  double p = c * lambda / 2.0 + c * c * lambda;
  double q = 0.5 * (1.0 - std::exp(-c)) / (1.0 + 0.75 * (1.0 - lambda) / lambda);
  return make_profile(p, q, delta, 1.0);
}

RejectionProfile amplifier_profile_test1(std::uint64_t n, double a_lo, double a_lo_strict,
                                         double delta, const ConstantsProfile& profile) {
  double c = test1_c(a_lo, a_lo_strict);
  auto s = static_cast<double>(test1_draws(n, a_lo, a_lo_strict));
  double beta = c * c * std::exp(-c);
  double nd = static_cast<double>(n);
  double p = std::min(1.0, std::pow(1.0 - a_lo / nd, s) + beta);
  double q = std::pow(1.0 - a_lo_strict / nd, s);
  return make_profile(p, q, delta, profile.scale_amp_t1);
}

RejectionProfile amplifier_profile_test2(std::uint64_t n, double b_hi, double b_hi_strict,
                                         double alpha, double delta,
                                         const ConstantsProfile& profile) {
  auto s = static_cast<double>(test2_draws(n, b_hi, b_hi_strict));
  double nd = static_cast<double>(n);
  double pb = b_hi / nd;
  double e0 = std::pow(1.0 - pb, s);
  double p1 = s * pb * std::pow(1.0 - pb, s - 1.0);
  double p = std::min(1.0, 0.5 * p1 + std::max(0.0, 1.0 - e0 - p1));
  double q = (1.0 - std::pow(1.0 - b_hi_strict / nd, s)) / (2.0 + alpha);
  return make_profile(p, q, delta, profile.scale_amp_t2);
}

RunResult test1_large(PairOracle& oracle, ProverStrategy& prover, Element x_ref,
                      const SupportContext& ctx, RngStream& verifier_rng) {
  RunResult result;
  const std::uint64_t n = oracle.domain_size();
  const std::uint64_t s = test1_draws(n, ctx.a_lo, ctx.a_lo_strict);
  const double c = test1_c(ctx.a_lo, ctx.a_lo_strict);
  const double beta = c * c * std::exp(-c);

  std::vector<Element> sent(s);
  for (auto& y : sent) y = static_cast<Element>(verifier_rng.next_below(n));

  OracleStats& stats = oracle.stats();
  const std::uint64_t msg_bits = s * element_bits(n);
  stats.bits_sent_to_prover += msg_bits;
  result.declared.bits_sent_to_prover += msg_bits;

  std::optional<Element> answer = prover.pick_in_support(sent, ctx);
  stats.rounds += 1;
  result.declared.rounds += 1;

  if (!answer.has_value()) {
    stats.bits_sent_to_verifier += 1;
    result.declared.bits_sent_to_verifier += 1;
    return result;  // prover FAIL -> Reject
  }
  stats.bits_sent_to_verifier += element_bits(n);
  result.declared.bits_sent_to_verifier += element_bits(n);

  if (std::find(sent.begin(), sent.end(), *answer) == sent.end()) {
    return result;  // exhibit not among the sent elements -> Reject
  }
  SupportCheckResult check = is_in_support(oracle, x_ref, *answer, beta);
  result.declared.pcond_queries += check.queries_used;
  if (check.answer == SupportAnswer::Yes) result.decision = Decision::Accept;
  return result;
}

RunResult test2_large(PairOracle& oracle, ProverStrategy& prover, const SupportContext& ctx,
                      RngStream& verifier_rng) {
  RunResult result;
  const std::uint64_t n = oracle.domain_size();
  const std::uint64_t s = test2_draws(n, ctx.b_hi, ctx.b_hi_strict);

  Element planted = oracle.samp();
  result.declared.samples_drawn += 1;

  std::vector<Element> tuple(s + 1);
  tuple[0] = planted;
  for (std::uint64_t i = 1; i <= s; ++i) {
    tuple[i] = static_cast<Element>(verifier_rng.next_below(n));
  }
  // Fisher-Yates; track where the planted sample lands.
  std::size_t planted_pos = 0;
  for (std::size_t i = tuple.size() - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(verifier_rng.next_below(i + 1));
    std::swap(tuple[i], tuple[j]);
    if (planted_pos == i) {
      planted_pos = j;
    } else if (planted_pos == j) {
      planted_pos = i;
    }
  }

  OracleStats& stats = oracle.stats();
  const std::uint64_t msg_bits = (s + 1) * element_bits(n);
  stats.bits_sent_to_prover += msg_bits;
  result.declared.bits_sent_to_prover += msg_bits;

  std::size_t guess = prover.guess_planted_index(tuple, ctx);
  stats.rounds += 1;
  result.declared.rounds += 1;
  stats.bits_sent_to_verifier += index_bits(s + 1);
  result.declared.bits_sent_to_verifier += index_bits(s + 1);

  if (guess >= tuple.size()) return result;  // malformed index -> Reject
  if (guess == planted_pos) result.decision = Decision::Accept;
  return result;
}

AmplifiedResult verify_support_large(PairOracle& oracle, ProverStrategy& prover,
                                     const SupportContext& ctx, double alpha, double delta,
                                     const ConstantsProfile& profile, RngStream& verifier_rng) {
  AmplifiedResult result;
  const std::uint64_t n = oracle.domain_size();
  RejectionProfile prof1 =
      amplifier_profile_test1(n, ctx.a_lo, ctx.a_lo_strict, delta, profile);
  RejectionProfile prof2 =
      amplifier_profile_test2(n, ctx.b_hi, ctx.b_hi_strict, alpha, delta, profile);

  Element x_ref = oracle.samp();
  result.declared.samples_drawn += 1;

  result.test1_trials = prof1.trials;
  for (std::uint64_t i = 0; i < prof1.trials; ++i) {
    RunResult run = test1_large(oracle, prover, x_ref, ctx, verifier_rng);
    result.declared += run.declared;
    result.test1_rejects += (run.decision == Decision::Reject);
  }
  bool test1_ok = static_cast<double>(result.test1_rejects) <
                  prof1.threshold * static_cast<double>(prof1.trials);

  result.test2_trials = prof2.trials;
  for (std::uint64_t i = 0; i < prof2.trials; ++i) {
    RunResult run = test2_large(oracle, prover, ctx, verifier_rng);
    result.declared += run.declared;
    result.test2_rejects += (run.decision == Decision::Reject);
  }
  bool test2_ok = static_cast<double>(result.test2_rejects) <
                  prof2.threshold * static_cast<double>(prof2.trials);

  result.decision = (test1_ok && test2_ok) ? Decision::Accept : Decision::Reject;
  return result;
}

SmallSupportParams SmallSupportParams::derive(const SupportContext& ctx, double alpha,
                                              double delta_s, const ConstantsProfile& profile) {
  if (!(ctx.a_lo > ctx.a_lo_strict) || !(ctx.b_hi_strict > ctx.b_hi)) {
    throw std::invalid_argument("verify_support_small: invalid claim window");
  }
  double ratio1 = ctx.a_lo / ctx.a_lo_strict;
  double ratio2 = (1.0 + alpha) * ctx.b_hi_strict / ctx.b_hi;
  if (!(ratio1 > 1.0) || !(ratio2 > 1.0)) {
    throw std::invalid_argument("verify_support_small: degenerate claim ratios");
  }
  SmallSupportParams p{};
  p.s1 = ConstantsProfile::scaled_count(std::log(1.0 / delta_s) / std::log(ratio1),
                                        profile.scale_small_s1);
  p.s2 = ConstantsProfile::scaled_count(std::log(1.0 / delta_s) / std::log(ratio2),
                                        profile.scale_small_s2);
  return p;
}

SmallSupportResult verify_support_small(PairOracle& oracle, ProverStrategy& prover,
                                        const SupportContext& ctx, double alpha, double delta_c,
                                        double delta_s, const ConstantsProfile& profile,
                                        RngStream& verifier_rng) {
  SmallSupportResult result;
  const std::uint64_t n = oracle.domain_size();
  const auto [s1, s2] = SmallSupportParams::derive(ctx, alpha, delta_s, profile);

  std::vector<Element> claimed = prover.claim_support(ctx);
  OracleStats& stats = oracle.stats();
  const std::uint64_t msg_bits = claimed.size() * element_bits(n);
  stats.bits_sent_to_verifier += msg_bits;
  result.declared.bits_sent_to_verifier += msg_bits;
  stats.rounds += 1;
  result.declared.rounds += 1;

  auto sz = static_cast<double>(claimed.size());
  if (sz < ctx.a_lo || sz > ctx.b_hi) {
    result.reject_reason = "claimed support size outside [A, B]";
    return result;
  }
  std::unordered_set<Element> claimed_set;
  for (Element y : claimed) {
    if (y >= n || !claimed_set.insert(y).second) {
      result.reject_reason = "malformed claimed support";
      return result;
    }
  }

  // Test 1: spot-check claimed elements for membership.
  Element x_ref = oracle.samp();
  result.declared.samples_drawn += 1;
  for (std::uint64_t i = 0; i < s1; ++i) {
    Element z = claimed[static_cast<std::size_t>(verifier_rng.next_below(claimed.size()))];
    SupportCheckResult check =
        is_in_support(oracle, x_ref, z, delta_c / static_cast<double>(s1));
    result.declared.pcond_queries += check.queries_used;
    if (check.answer != SupportAnswer::Yes) {
      result.reject_reason = "claimed element failed membership check";
      return result;
    }
  }

  // Test 2: real samples must land inside the claimed support.
  for (std::uint64_t i = 0; i < s2; ++i) {
    Element x = oracle.samp();
    result.declared.samples_drawn += 1;
    if (!claimed_set.contains(x)) {
      result.reject_reason = "sample outside claimed support";
      return result;
    }
  }

  result.decision = Decision::Accept;
  return result;
}

}  // namespace pcv
