#include "pcv/prover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "pcv/bucketing.hpp"
#include "pcv/representative.hpp"

namespace pcv {

int honest_tag(const Distribution& dist, Element x, const Bucketing& bucketing) {
  return bucketing.bucket_of(dist[x]);
}

AdversaryConfig AdversaryConfig::slide(int offset) {
  AdversaryConfig c;
  c.kind = Kind::Slide;
  c.offset = offset;
  return c;
}
AdversaryConfig AdversaryConfig::bucket_liar(int target_bucket, int offset) {
  AdversaryConfig c;
  c.kind = Kind::BucketLiarSingle;
  c.target_bucket = target_bucket;
  c.offset = offset;
  return c;
}
AdversaryConfig AdversaryConfig::support_inflate(double factor) {
  AdversaryConfig c;
  c.kind = Kind::SupportInflate;
  c.factor = factor;
  return c;
}
AdversaryConfig AdversaryConfig::support_deflate(double factor) {
  AdversaryConfig c;
  c.kind = Kind::SupportDeflate;
  c.factor = factor;
  return c;
}
AdversaryConfig AdversaryConfig::greedy_test2() {
  AdversaryConfig c;
  c.kind = Kind::GreedyTest2;
  return c;
}
AdversaryConfig AdversaryConfig::random_tagger() {
  AdversaryConfig c;
  c.kind = Kind::RandomTagger;
  return c;
}

std::string AdversaryConfig::kind_name() const {
  switch (kind) {
    case Kind::Honest: return "honest";
    case Kind::Slide: return "slide";
    case Kind::SupportInflate: return "support-inflate";
    case Kind::SupportDeflate: return "support-deflate";
    case Kind::BucketLiarSingle: return "bucket-liar";
    case Kind::GreedyTest2: return "greedy-test2";
    case Kind::RandomTagger: return "random-tagger";
  }
  return "honest";
}

AdversaryConfig::Kind AdversaryConfig::kind_from_name(const std::string& name) {
  if (name == "honest") return Kind::Honest;
  if (name == "slide") return Kind::Slide;
  if (name == "support-inflate") return Kind::SupportInflate;
  if (name == "support-deflate") return Kind::SupportDeflate;
  if (name == "bucket-liar") return Kind::BucketLiarSingle;
  if (name == "greedy-test2") return Kind::GreedyTest2;
  if (name == "random-tagger") return Kind::RandomTagger;
  throw std::invalid_argument("unknown prover kind: " + name);
}

namespace {

class ScriptedProver final : public ProverStrategy {
 public:
  ScriptedProver(const AdversaryConfig& config, const Distribution& dist, RngStream rng)
      : config_(config), dist_(&dist), rng_(rng) {}

  RelevantBucketsReply relevant_buckets(double tau) override {
    const Distribution& d = *dist_;
    ApproxHistogram hist = approx_histogram(d, tau);
    const Bucketing& bk = hist.bucketing;
    const double threshold =
        tau / (10.0 * static_cast<double>(bk.num_buckets_L()));
    RelevantBucketsReply reply;
    for (int j = 0; j <= bk.num_buckets_L(); ++j) {
      if (hist.masses[static_cast<std::size_t>(j)] >= threshold) {
        Element y = find_heavy_representative(d, bk, j);
        reply.reps.push_back({y, mapped_tag(j, bk.num_buckets_L())});
      }
    }
    return reply;
  }

  std::vector<int> tag_samples(const std::vector<Element>& samples, double tau) override {
    const Bucketing bk(dist_->n(), tau);
    std::vector<int> tags;
    tags.reserve(samples.size());
    for (Element x : samples) {
      tags.push_back(mapped_tag(honest_tag(*dist_, x, bk), bk.num_buckets_L()));
    }
    return tags;
  }

  std::vector<Element> claim_support(const SupportContext& ctx) override {
    std::vector<Element> supp = true_support(ctx);
    switch (config_.kind) {
      case AdversaryConfig::Kind::SupportInflate: {
        auto target = static_cast<std::size_t>(
            std::min<double>(static_cast<double>(dist_->n()),
                             std::ceil(config_.factor * static_cast<double>(supp.size()))));
        return inflate_to(std::move(supp), target);
      }
      case AdversaryConfig::Kind::SupportDeflate: {
        auto target = static_cast<std::size_t>(
            std::max(1.0, std::floor(static_cast<double>(supp.size()) / config_.factor)));
        return heaviest_prefix(std::move(supp), target);
      }
      case AdversaryConfig::Kind::Slide:
      case AdversaryConfig::Kind::BucketLiarSingle:
      case AdversaryConfig::Kind::GreedyTest2: {
        // Play consistently with whatever claim window the verifier derived:
        // trim to the heaviest floor(B) elements, or pad up to ceil(A).
        if (static_cast<double>(supp.size()) > ctx.b_hi) {
          return heaviest_prefix(std::move(supp),
                                 static_cast<std::size_t>(std::floor(ctx.b_hi)));
        }
        if (static_cast<double>(supp.size()) < ctx.a_lo) {
          return inflate_to(std::move(supp), static_cast<std::size_t>(std::ceil(ctx.a_lo)));
        }
        return supp;
      }
      default:
        return supp;
    }
  }

  std::optional<Element> pick_in_support(const std::vector<Element>& candidates,
                                         const SupportContext& ctx) override {
    std::vector<Element> in;
    for (Element y : candidates) {
      if (in_context_support(y, ctx)) in.push_back(y);
    }
    if (!in.empty()) {
      return in[static_cast<std::size_t>(rng_.next_below(in.size()))];
    }
    if (config_.kind == AdversaryConfig::Kind::Honest) return std::nullopt;
    // A cheating prover never answers FAIL: fall back to the heaviest
    // candidate under the unrestricted distribution, then to the first.
    Element best = candidates.empty() ? 0 : candidates.front();
    for (Element y : candidates) {
      if ((*dist_)[y] > (*dist_)[best]) best = y;
    }
    if (candidates.empty()) return std::nullopt;
    return best;
  }

  std::size_t guess_planted_index(const std::vector<Element>& tuple,
                                  const SupportContext& ctx) override {
    std::vector<std::size_t> in;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      if (in_context_support(tuple[i], ctx)) in.push_back(i);
    }
    if (in.empty()) return static_cast<std::size_t>(rng_.next_below(tuple.size()));
    if (config_.kind == AdversaryConfig::Kind::GreedyTest2 ||
        config_.kind == AdversaryConfig::Kind::Slide ||
        config_.kind == AdversaryConfig::Kind::BucketLiarSingle) {
      // Posterior of an index is proportional to its element's mass; pick an
      // argmax, ties broken uniformly.
      double best = -1.0;
      std::vector<std::size_t> arg;
      for (std::size_t i : in) {
        double m = (*dist_)[tuple[i]];
        if (m > best) {
          best = m;
          arg.assign(1, i);
        } else if (m == best) {
          arg.push_back(i);
        }
      }
      return arg[static_cast<std::size_t>(rng_.next_below(arg.size()))];
    }
    return in[static_cast<std::size_t>(rng_.next_below(in.size()))];
  }

 private:
  int mapped_tag(int tag, int L) {
    switch (config_.kind) {
      case AdversaryConfig::Kind::Slide:
        return std::clamp(tag + config_.offset, 0, L);
      case AdversaryConfig::Kind::BucketLiarSingle:
        return tag == config_.target_bucket ? std::clamp(tag + config_.offset, 0, L) : tag;
      case AdversaryConfig::Kind::RandomTagger:
        return static_cast<int>(rng_.next_below(static_cast<std::uint64_t>(L) + 1));
      default:
        return tag;
    }
  }

  bool in_context_support(Element y, const SupportContext& ctx) const {
    double m = (*dist_)[y];
    if (m <= 0.0) return false;
    if (!ctx.restriction.has_value()) return true;
    double c = (*dist_)[ctx.restriction->center];
    return m >= c / (1.0 + ctx.restriction->alpha) && m <= c * (1.0 + ctx.restriction->alpha);
  }

  std::vector<Element> true_support(const SupportContext& ctx) const {
    std::vector<Element> out;
    for (Element y = 0; y < dist_->n(); ++y) {
      if (in_context_support(y, ctx)) out.push_back(y);
    }
    return out;
  }

  std::vector<Element> heaviest_prefix(std::vector<Element> supp, std::size_t target) const {
    if (target >= supp.size()) return supp;
    std::sort(supp.begin(), supp.end(), [&](Element a, Element b) {
      return (*dist_)[a] > (*dist_)[b] || ((*dist_)[a] == (*dist_)[b] && a < b);
    });
    supp.resize(target);
    std::sort(supp.begin(), supp.end());
    return supp;
  }

  std::vector<Element> inflate_to(std::vector<Element> supp, std::size_t target) const {
    if (target <= supp.size()) return supp;
    std::unordered_set<Element> have(supp.begin(), supp.end());
    for (Element y = 0; y < dist_->n() && supp.size() < target; ++y) {
      if (!have.contains(y)) supp.push_back(y);
    }
    std::sort(supp.begin(), supp.end());
    return supp;
  }

  AdversaryConfig config_;
  const Distribution* dist_;
  RngStream rng_;
};

}  // namespace

std::unique_ptr<ProverStrategy> make_prover(const AdversaryConfig& config,
                                            const Distribution& dist, RngStream rng) {
  return std::make_unique<ScriptedProver>(config, dist, rng);
}

}  // namespace pcv
