#include "pcv/neighborhood_estimate.hpp"

#include <cmath>
#include <stdexcept>

namespace pcv {

NeighborhoodClassifier::NeighborhoodClassifier(PairOracle& oracle, Element center, double alpha_t,
                                               double ring_width, double gamma,
                                               double beta_per_call)
    : oracle_(&oracle),
      center_(center),
      alpha_t_(alpha_t),
      threshold_hi_(1.0 + alpha_t + 0.5 * ring_width),
      gamma_(gamma),
      beta_per_call_(beta_per_call) {}

std::uint64_t NeighborhoodClassifier::queries_per_miss() const {
  return compare_query_count(2.0, gamma_, beta_per_call_);
}

NeighborhoodClassifier::Verdict NeighborhoodClassifier::classify(Element z) {
  if (z == center_) return Verdict::Inside;
  auto it = cache_.find(z);
  if (it != cache_.end()) return it->second;
  ++cache_misses_;
  CompareOutcome out = compare(*oracle_, z, center_, gamma_, beta_per_call_, 2.0);
  queries_used_ += queries_per_miss();
  Verdict v = Verdict::Outside;
  if (out.is_estimate()) {
    if (out.alpha <= threshold_hi_ && out.alpha >= 1.0 / threshold_hi_) v = Verdict::Inside;
  }
  // High/Low mean the ratio left [1/2, 2] entirely; with alpha_t < 1 the
  // membership band is inside that range, so both verdicts are Outside. A
  // Fail can only come from a zero-mass pair, also Outside.
  cache_.emplace(z, v);
  return v;
}

EstimateNeighborhoodParams EstimateNeighborhoodParams::derive(double kappa, double beta,
                                                              double eta, double delta,
                                                              const ConstantsProfile& profile) {
  if (!(kappa > 0.0) || kappa > 0.5 || !(beta > 0.0) || beta > 0.5 || !(eta > 0.0) || eta > 0.5 ||
      !(delta > 0.0) || delta > 0.5) {
    throw std::invalid_argument("estimate_neighborhood: parameters must be in (0, 1/2]");
  }
  EstimateNeighborhoodParams p{};
  p.rings_T = ConstantsProfile::scaled_count(128.0 / (eta * beta * delta), profile.scale_est_rings);
  p.samples_m = ConstantsProfile::scaled_count(
      48.0 * std::log(8.0 / delta) / (eta * eta * beta), profile.scale_est_samples);
  p.gamma = profile.relaxed_gamma(kappa / (8.0 * static_cast<double>(p.rings_T)));
  p.beta_per_call = delta / (4.0 * static_cast<double>(p.samples_m));
  return p;
}

NeighborhoodEstimate estimate_neighborhood(PairOracle& oracle, Element x, double kappa,
                                           double beta, double eta, double delta,
                                           const ConstantsProfile& profile, RngStream& rng,
                                           std::optional<NeighborhoodClassifier>& classifier_out) {
  const EstimateNeighborhoodParams p =
      EstimateNeighborhoodParams::derive(kappa, beta, eta, delta, profile);

  NeighborhoodEstimate est;
  est.T = p.rings_T;
  est.t = 1 + rng.next_below(p.rings_T);
  est.kappa = kappa;
  est.alpha_t = kappa + (static_cast<double>(est.t) - 1.0) * kappa / static_cast<double>(p.rings_T);

  classifier_out.emplace(oracle, x, est.alpha_t, kappa / static_cast<double>(p.rings_T), p.gamma,
                         p.beta_per_call);

  std::uint64_t inside = 0;
  for (std::uint64_t i = 0; i < p.samples_m; ++i) {
    Element z = oracle.samp();
    ++est.samples_used;
    if (classifier_out->classify(z) == NeighborhoodClassifier::Verdict::Inside) ++inside;
  }
  est.w_hat = static_cast<double>(inside) / static_cast<double>(p.samples_m);
  est.queries_used = classifier_out->queries_used();
  return est;
}

NeighborhoodEstimate estimate_neighborhood(PairOracle& oracle, Element x, double kappa,
                                           double beta, double eta, double delta,
                                           const ConstantsProfile& profile, RngStream& rng) {
  std::optional<NeighborhoodClassifier> classifier;
  return estimate_neighborhood(oracle, x, kappa, beta, eta, delta, profile, rng, classifier);
}

NeighborhoodSamplerParams NeighborhoodSamplerParams::derive(double beta, double eta,
                                                            const ConstantsProfile& profile) {
  NeighborhoodSamplerParams p{};
  p.delta_prime = profile.c_sample * eta * std::log(1.0 / eta);
  if (!(p.delta_prime > 0.0)) p.delta_prime = profile.c_sample * 1e-6;
  double raw = std::log(3.0 / p.delta_prime) / std::log(1.0 / (1.0 - beta));
  p.raw_draws_s = ConstantsProfile::scaled_count(raw, profile.scale_sampler_draws);
  return p;
}

NeighborhoodSampleResult sample_from_neighborhood(PairOracle& oracle,
                                                  NeighborhoodClassifier& classifier,
                                                  const NeighborhoodSamplerParams& params,
                                                  RngStream& rng) {
  NeighborhoodSampleResult result;
  const std::uint64_t before = classifier.queries_used();
  std::vector<Element> inside;
  inside.reserve(params.raw_draws_s);
  for (std::uint64_t i = 0; i < params.raw_draws_s; ++i) {
    Element z = oracle.samp();
    ++result.samples_used;
    if (classifier.classify(z) == NeighborhoodClassifier::Verdict::Inside) {
      inside.push_back(z);
    }
  }
  result.queries_used = classifier.queries_used() - before;
  if (!inside.empty()) {
    result.element = inside[static_cast<std::size_t>(rng.next_below(inside.size()))];
  }
  return result;
}

}  // namespace pcv
