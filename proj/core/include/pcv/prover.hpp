#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcv/distribution.hpp"
#include "pcv/rng.hpp"

namespace pcv {

struct RepresentativeClaim {
  Element y;
  int tag;
};

struct RelevantBucketsReply {
  std::vector<RepresentativeClaim> reps;  // tags double as the relevant set
};

/// Restriction of a support-size sub-protocol to a neighborhood of `center`
/// whose half-width alpha was fixed by the verifier. Part of the common
/// input of the sub-protocol, so the prover sees it too.
struct NeighborhoodRestriction {
  Element center;
  double alpha;
};

struct SupportContext {
  std::optional<NeighborhoodRestriction> restriction;
  double a_lo_strict = 0.0;  // A'
  double a_lo = 0.0;         // A
  double b_hi = 0.0;         // B
  double b_hi_strict = 0.0;  // B'
};

/// Message-level prover interface. Each handler is a deterministic function
/// of the prover's view of the distribution, the received message, and the
/// prover's own RNG stream; verifier-private randomness never reaches it.
class ProverStrategy {
 public:
  virtual ~ProverStrategy() = default;

  virtual RelevantBucketsReply relevant_buckets(double tau) = 0;
  virtual std::vector<int> tag_samples(const std::vector<Element>& samples, double tau) = 0;
  virtual std::vector<Element> claim_support(const SupportContext& ctx) = 0;
  virtual std::optional<Element> pick_in_support(const std::vector<Element>& candidates,
                                                 const SupportContext& ctx) = 0;
  virtual std::size_t guess_planted_index(const std::vector<Element>& tuple,
                                          const SupportContext& ctx) = 0;
};

/// Bucket tag an honest prover reports for x.
int honest_tag(const Distribution& dist, Element x, const class Bucketing& bucketing);

struct AdversaryConfig {
  enum class Kind {
    Honest,
    Slide,             // every tag shifted by `offset`
    SupportInflate,    // claimed support grown by `factor`
    SupportDeflate,    // claimed support shrunk by `factor`
    BucketLiarSingle,  // only `target_bucket` tags shifted by `offset`
    GreedyTest2,       // planted-index guesses maximize the posterior
    RandomTagger,      // tags uniform over the buckets
  };

  Kind kind = Kind::Honest;
  int offset = 0;
  double factor = 1.0;
  int target_bucket = -1;

  static AdversaryConfig honest() { return AdversaryConfig{}; }
  static AdversaryConfig slide(int offset);
  static AdversaryConfig bucket_liar(int target_bucket, int offset);
  static AdversaryConfig support_inflate(double factor);
  static AdversaryConfig support_deflate(double factor);
  static AdversaryConfig greedy_test2();
  static AdversaryConfig random_tagger();

  std::string kind_name() const;
  static Kind kind_from_name(const std::string& name);
};

/// Builds a prover playing `config` with full knowledge of `dist`.
std::unique_ptr<ProverStrategy> make_prover(const AdversaryConfig& config,
                                            const Distribution& dist, RngStream rng);

}  // namespace pcv
