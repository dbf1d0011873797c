#pragma once

#include <cstdint>
#include <stdexcept>

#include "pcv/neighborhood_estimate.hpp"
#include "pcv/oracle.hpp"
#include "pcv/rng.hpp"

namespace pcv {

/// Raised when the neighborhood sampler exhausted its retry budget; the
/// enclosing protocol turns it into a Reject.
struct SamplerExhausted : std::runtime_error {
  SamplerExhausted() : std::runtime_error("neighborhood sampler returned |_ too often") {}
};

/// Verifier-side emulation of oracle access to the hidden distribution
/// restricted to a certified neighborhood. Sampling goes through the moat
/// sampler; pairwise queries first classify both endpoints against the
/// neighborhood (cached), then either delegate to the parent (both inside:
/// the conditional ratio is unchanged by restriction), answer one-sidedly
/// (one inside), or FAIL (none).
///
/// Resource accounting: stats() is the parent's ledger, so message bits and
/// rounds accumulate globally; the wrapper additionally tracks how many raw
/// parent-level operations its emulation consumed.
class NeighborhoodRestrictedOracle final : public PairOracle {
 public:
  NeighborhoodRestrictedOracle(PairOracle& parent, NeighborhoodClassifier& classifier,
                               NeighborhoodSamplerParams sampler_params, int retry_budget,
                               RngStream rng)
      : parent_(&parent),
        classifier_(&classifier),
        sampler_params_(sampler_params),
        retry_budget_(retry_budget),
        rng_(rng) {}

  Element samp() override;
  PcondResult pcond(Element x, Element y) override;
  std::uint64_t pcond_count_x(Element x, Element y, std::uint64_t q) override;
  std::uint64_t domain_size() const override { return parent_->domain_size(); }
  OracleStats& stats() override { return parent_->stats(); }

  std::uint64_t raw_samples_used() const { return raw_samples_used_; }
  std::uint64_t restricted_samples_served() const { return restricted_samples_served_; }
  std::uint64_t delegated_pcond_queries() const { return delegated_pcond_queries_; }
  std::uint64_t shortcircuit_pcond_queries() const { return shortcircuit_pcond_queries_; }

 private:
  bool inside(Element z) {
    return classifier_->classify(z) == NeighborhoodClassifier::Verdict::Inside;
  }

  PairOracle* parent_;
  NeighborhoodClassifier* classifier_;
  NeighborhoodSamplerParams sampler_params_;
  int retry_budget_;
  RngStream rng_;
  std::uint64_t raw_samples_used_ = 0;
  std::uint64_t restricted_samples_served_ = 0;
  std::uint64_t delegated_pcond_queries_ = 0;
  std::uint64_t shortcircuit_pcond_queries_ = 0;
};

}  // namespace pcv
