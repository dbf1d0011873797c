#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "pcv/distribution.hpp"
#include "pcv/rng.hpp"

namespace pcv {

struct OracleStats {
  std::uint64_t samples_drawn = 0;
  std::uint64_t pcond_queries = 0;
  std::uint64_t bits_sent_to_prover = 0;
  std::uint64_t bits_sent_to_verifier = 0;
  std::uint64_t rounds = 0;

  OracleStats& operator+=(const OracleStats& o) {
    samples_drawn += o.samples_drawn;
    pcond_queries += o.pcond_queries;
    bits_sent_to_prover += o.bits_sent_to_prover;
    bits_sent_to_verifier += o.bits_sent_to_verifier;
    rounds += o.rounds;
    return *this;
  }
  bool operator==(const OracleStats&) const = default;
};

/// FAIL is a legal oracle response (zero conditional mass), not an error.
using PcondResult = std::optional<Element>;

/// Hook for per-call logging; the harness provides a JSONL implementation.
class TranscriptSink {
 public:
  virtual ~TranscriptSink() = default;
  virtual void record_samp(Element result) = 0;
  virtual void record_pcond(Element x, Element y, PcondResult result) = 0;
};

/// Sampling access used by verifier-side code. Verifiers only ever hold one
/// of these; the hidden distribution is not reachable through it.
class PairOracle {
 public:
  virtual ~PairOracle() = default;

  virtual Element samp() = 0;
  virtual PcondResult pcond(Element x, Element y) = 0;
  virtual std::uint64_t domain_size() const = 0;
  virtual OracleStats& stats() = 0;

  /// q repeated pcond({x,y}) calls; returns how many came back x.
  /// Implementations may batch for speed but must count q queries.
  virtual std::uint64_t pcond_count_x(Element x, Element y, std::uint64_t q);
};

/// Walker/Vose alias table; O(1) weighted sampling.
class AliasTable {
 public:
  explicit AliasTable(const std::vector<double>& weights);
  Element sample(RngStream& rng) const;

 private:
  std::vector<double> accept_;
  std::vector<Element> alias_;
};

class InstrumentedOracle final : public PairOracle {
 public:
  InstrumentedOracle(const Distribution& dist, RngStream rng);

  Element samp() override;
  PcondResult pcond(Element x, Element y) override;
  std::uint64_t pcond_count_x(Element x, Element y, std::uint64_t q) override;
  std::uint64_t domain_size() const override { return dist_->n(); }
  OracleStats& stats() override { return stats_; }
  const OracleStats& stats() const { return stats_; }

  void set_transcript(TranscriptSink* sink) { sink_ = sink; }

 private:
  const Distribution* dist_;  // hidden; no accessor
  AliasTable alias_;
  RngStream rng_;
  OracleStats stats_;
  TranscriptSink* sink_ = nullptr;
};

/// Sample-set simulation of the pairwise conditional oracle: |_ when neither
/// query point was sampled, a fair coin when both were, else the sampled one.
PcondResult pcond_sim(const std::unordered_set<Element>& samples, Element z1, Element z2,
                      RngStream& rng);

}  // namespace pcv
