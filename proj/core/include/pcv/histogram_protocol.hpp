#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "pcv/approximate_single.hpp"
#include "pcv/bucketing.hpp"
#include "pcv/oracle.hpp"
#include "pcv/profile.hpp"
#include "pcv/prover.hpp"

namespace pcv {

/// Derived parameters of one histogram-verification session.
struct HistogramSession {
  double tau_prime;
  double tau;                      // tau_factor * tau_prime
  int num_buckets_L;
  std::uint64_t samples_s;         // scaled sample-set size
  double gamma;                    // per-pair comparison accuracy in use
  double relevant_threshold;       // tau / (10 L)
  double reject_threshold_formula; // 2 tau' - (2 tau + tau^2) - tau/(1+tau)

  static HistogramSession derive(std::uint64_t n, double tau_prime,
                                 const ConstantsProfile& profile);
};

struct HistogramResult {
  Decision decision = Decision::Reject;
  std::string reject_reason;
  HistogramSession session{};
  std::optional<ApproxHistogram> learned;            // set on Accept
  std::map<int, double> certified_masses;            // tag -> certified mass
  std::map<int, Element> representatives;            // tag -> y_j
  double consistency_sum = 0.0;
  double reject_threshold_used = 0.0;
  OracleStats declared;
};

/// Full histogram-verification session: representative claims are certified
/// pointwise, a fresh sample set is tagged by the prover, and the tags are
/// cross-checked against the certified masses through pairwise comparisons
/// before the empirical bucket histogram is released.
HistogramResult verify_histogram(PairOracle& oracle, ProverStrategy& prover, double tau_prime,
                                 const ConstantsProfile& profile, RngStream& verifier_rng);

/// Histogram-level distance surrogate for a label-invariant property.
using PropertyDistance = std::function<double(const ApproxHistogram&)>;

/// Distance to "support size within [s_min, s_max]": mass outside the bucket
/// band implied by the range pays tau per bucket of displacement.
PropertyDistance support_size_range_distance(std::uint64_t s_min, std::uint64_t s_max);

/// Distance to "uniform over some support": cheapest bucket-unit transport
/// onto a single bucket.
PropertyDistance uniformity_over_support_distance();

/// Threshold rule on a verified histogram: Accept iff the surrogate distance
/// is at most (tau_c + tau_f) / 2. Requires tau_c < tau_f.
Decision decide_label_invariant(const ApproxHistogram& histogram,
                                const PropertyDistance& property_distance, double tau_c,
                                double tau_f);

}  // namespace pcv
