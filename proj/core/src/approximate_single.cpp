#include "pcv/approximate_single.hpp"

#include <algorithm>
#include <cmath>

#include "pcv/bucketing.hpp"
#include "pcv/restricted_oracle.hpp"

namespace pcv {

ApproxSingleParams ApproxSingleParams::derive(std::uint64_t n, double tau, double delta_prime,
                                              const ConstantsProfile& profile) {
  if (!(tau > 0.0) || !(delta_prime > 0.0) || delta_prime >= 1.0) {
    throw std::invalid_argument("approximate_single: bad tau/delta'");
  }
  ApproxSingleParams p{};
  p.num_buckets_L = num_buckets(n, tau);
  p.kappa = tau / 3.0;
  p.beta = tau / (30.0 * static_cast<double>(p.num_buckets_L));
  p.delta_c = delta_prime / 2.0;
  p.delta_s = delta_prime / 2.0;

  // Sample counts of the support sub-protocol at window ratio (1+tau); the
  // accuracy knob eta is tied to them.
  double s_window = ConstantsProfile::scaled_count(
      std::log(2.0 / delta_prime) / std::log1p(tau), profile.scale_small_s1);
  auto sd = static_cast<double>(s_window);
  double eta = std::min(tau / 10.0, std::log(sd + 1.0) / (100.0 * sd * delta_prime));
  p.eta = std::clamp(eta, 1e-9, 0.5);
  return p;
}

SupportContext approx_single_bounds(std::uint64_t n, double tau, int j_star, double w_hat,
                                    double eta, double alpha_t) {
  const double nd = static_cast<double>(n);
  const double slack = (1.0 + eta) * (1.0 + alpha_t);
  auto claimed_mass = [&](int j) { return tau * std::pow(1.0 + tau, j) / nd; };
  SupportContext ctx;
  ctx.a_lo_strict = w_hat / (claimed_mass(j_star + 1) * slack);
  ctx.a_lo = w_hat / (claimed_mass(j_star) * slack);
  ctx.b_hi = w_hat * slack / claimed_mass(j_star - 1);
  ctx.b_hi_strict = w_hat * slack / claimed_mass(j_star - 2);
  return ctx;
}

ApproxSingleResult approximate_single(PairOracle& oracle, ProverStrategy& prover,
                                      const PointMassClaim& claim, double tau,
                                      double delta_prime, const ConstantsProfile& profile,
                                      RngStream& verifier_rng) {
  ApproxSingleResult result;
  const std::uint64_t n = oracle.domain_size();
  const ApproxSingleParams params = ApproxSingleParams::derive(n, tau, delta_prime, profile);

  RngStream est_rng = verifier_rng.substream(1);
  RngStream sub_rng = verifier_rng.substream(2);
  RngStream sampler_rng = verifier_rng.substream(3);

  std::optional<NeighborhoodClassifier> classifier;
  result.estimate = estimate_neighborhood(oracle, claim.y_star, params.kappa, params.beta,
                                          params.eta, delta_prime / 2.0, profile, est_rng,
                                          classifier);
  result.declared.samples_drawn += result.estimate.samples_used;

  if (result.estimate.w_hat <= (1.0 + params.eta) * params.beta) {
    result.reject_reason = "estimated neighborhood mass at or below threshold";
    result.declared.pcond_queries += classifier->queries_used();
    return result;
  }

  result.bounds = approx_single_bounds(n, tau, claim.j_star, result.estimate.w_hat, params.eta,
                                       result.estimate.alpha_t);
  result.bounds.restriction =
      NeighborhoodRestriction{claim.y_star, result.estimate.alpha_t};

  // The restriction is part of the sub-protocol's common input.
  const std::uint64_t restriction_bits = element_bits(n) + 64;
  oracle.stats().bits_sent_to_prover += restriction_bits;
  result.declared.bits_sent_to_prover += restriction_bits;

  NeighborhoodSamplerParams sampler_params =
      NeighborhoodSamplerParams::derive(params.beta, params.eta, profile);
  NeighborhoodRestrictedOracle restricted(oracle, *classifier, sampler_params,
                                          profile.sampler_retry_budget, sampler_rng);

  const double alpha_flat =
      (1.0 + result.estimate.alpha_t) * (1.0 + result.estimate.alpha_t) - 1.0;
  const double sqrt_n = std::ceil(std::sqrt(static_cast<double>(n)));
  result.used_large_protocol = result.bounds.a_lo > sqrt_n;

  Decision sub = Decision::Reject;
  OracleStats sub_declared;
  try {
    if (result.used_large_protocol) {
      AmplifiedResult r = verify_support_large(restricted, prover, result.bounds, alpha_flat,
                                               delta_prime / 2.0, profile, sub_rng);
      sub = r.decision;
      sub_declared = r.declared;
      if (sub == Decision::Reject) result.reject_reason = "support window check failed";
    } else {
      SmallSupportResult r = verify_support_small(restricted, prover, result.bounds, alpha_flat,
                                                  params.delta_c, params.delta_s, profile,
                                                  sub_rng);
      sub = r.decision;
      sub_declared = r.declared;
      if (sub == Decision::Reject) result.reject_reason = r.reject_reason;
    }
  } catch (const SamplerExhausted&) {
    sub = Decision::Reject;
    result.reject_reason = "neighborhood sampler exhausted its retries";
  }

  // Convert the sub-protocol's restricted-level ledger into raw oracle terms.
  result.declared.samples_drawn += restricted.raw_samples_used();
  result.declared.pcond_queries +=
      classifier->queries_used() + restricted.delegated_pcond_queries();
  result.declared.bits_sent_to_prover += sub_declared.bits_sent_to_prover;
  result.declared.bits_sent_to_verifier += sub_declared.bits_sent_to_verifier;
  result.declared.rounds += sub_declared.rounds;

  if (sub == Decision::Accept) {
    result.decision = Decision::Accept;
    result.certified_mass = tau * std::pow(1.0 + tau, claim.j_star) / static_cast<double>(n);
  }
  return result;
}

}  // namespace pcv
