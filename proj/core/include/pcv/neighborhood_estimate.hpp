#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pcv/compare.hpp"
#include "pcv/oracle.hpp"
#include "pcv/profile.hpp"
#include "pcv/rng.hpp"

namespace pcv {

/// Noisy membership test for the alpha_t-neighborhood of a fixed center,
/// built on ratio comparisons. The decision threshold sits mid-ring (between
/// alpha_t and alpha_{t+1} = alpha_t + kappa/T), so with comparison accuracy
/// kappa/(8T) only elements inside the moat ring can be misclassified.
///
/// Decisions are cached per element: one verdict per element per run, which
/// is also what keeps repeated membership queries affordable.
class NeighborhoodClassifier {
 public:
  enum class Verdict { Inside, Outside };

  NeighborhoodClassifier(PairOracle& oracle, Element center, double alpha_t, double ring_width,
                         double gamma, double beta_per_call);

  Verdict classify(Element z);

  Element center() const { return center_; }
  double alpha_t() const { return alpha_t_; }
  std::uint64_t queries_used() const { return queries_used_; }
  std::uint64_t cache_misses() const { return cache_misses_; }
  std::uint64_t queries_per_miss() const;

 private:
  PairOracle* oracle_;
  Element center_;
  double alpha_t_;
  double threshold_hi_;  // 1 + alpha_t + ring/2
  double gamma_;
  double beta_per_call_;
  std::uint64_t queries_used_ = 0;
  std::uint64_t cache_misses_ = 0;
  std::unordered_map<Element, Verdict> cache_;
};

struct NeighborhoodEstimate {
  double w_hat = 0.0;     // estimated neighborhood mass
  std::uint64_t t = 1;    // uniform in [1, T]
  std::uint64_t T = 1;    // ring count actually used
  double alpha_t = 0.0;   // kappa + (t-1) kappa / T, in [kappa, 2 kappa)
  double kappa = 0.0;
  std::uint64_t samples_used = 0;
  std::uint64_t queries_used = 0;
  bool oracle_failed = false;
};

struct EstimateNeighborhoodParams {
  std::uint64_t rings_T;
  std::uint64_t samples_m;
  double gamma;          // per-comparison accuracy, kappa/(8T) before relaxation
  double beta_per_call;  // delta / (4m)

  static EstimateNeighborhoodParams derive(double kappa, double beta, double eta, double delta,
                                           const ConstantsProfile& profile);
};

/// Estimates the mass of a random ring-widened neighborhood of x.
/// t is uniform over the rings; when the alpha_t-neighborhood holds mass at
/// least beta the estimate is within a (1+eta) factor, and when it holds
/// less the estimate stays below (1+eta) beta -- each with probability 1-delta,
/// at unscaled constants.
NeighborhoodEstimate estimate_neighborhood(PairOracle& oracle, Element x, double kappa,
                                           double beta, double eta, double delta,
                                           const ConstantsProfile& profile, RngStream& rng);

/// Variant that also hands back the classifier (with its cache) so that the
/// caller can keep using the same membership decisions.
NeighborhoodEstimate estimate_neighborhood(PairOracle& oracle, Element x, double kappa,
                                           double beta, double eta, double delta,
                                           const ConstantsProfile& profile, RngStream& rng,
                                           std::optional<NeighborhoodClassifier>& classifier_out);

struct NeighborhoodSampleResult {
  std::optional<Element> element;  // nullopt = |_
  std::uint64_t samples_used = 0;
  std::uint64_t queries_used = 0;
};

struct NeighborhoodSamplerParams {
  std::uint64_t raw_draws_s;
  double delta_prime;

  static NeighborhoodSamplerParams derive(double beta, double eta,
                                          const ConstantsProfile& profile);
};

/// Draws one sample of the distribution restricted to the alpha_t
/// neighborhood captured by `classifier`: raw samples are classified and one
/// inside element is returned uniformly at random, or |_ when none landed
/// inside. Requires the neighborhood-mass and moat conditions of the
/// estimate for its distributional guarantee.
NeighborhoodSampleResult sample_from_neighborhood(PairOracle& oracle,
                                                  NeighborhoodClassifier& classifier,
                                                  const NeighborhoodSamplerParams& params,
                                                  RngStream& rng);

}  // namespace pcv
