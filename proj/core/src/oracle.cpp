#include "pcv/oracle.hpp"

#include <stdexcept>

namespace pcv {

std::uint64_t PairOracle::pcond_count_x(Element x, Element y, std::uint64_t q) {
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    PcondResult r = pcond(x, y);
    if (!r.has_value()) {
      throw std::runtime_error("pcond_count_x: oracle FAIL");
    }
    count += (*r == x);
  }
  return count;
}

AliasTable::AliasTable(const std::vector<double>& weights) {
  const std::size_t n = weights.size();
  accept_.assign(n, 1.0);
  alias_.assign(n, 0);
  double total = stable_sum(weights);
  if (!(total > 0.0)) throw std::invalid_argument("AliasTable: zero total mass");

  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * static_cast<double>(n) / total;

  std::vector<Element> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<Element>(i));
  }
  while (!small.empty() && !large.empty()) {
    Element s = small.back();
    small.pop_back();
    Element l = large.back();
    large.pop_back();
    accept_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  while (!large.empty()) {
    accept_[large.back()] = 1.0;
    large.pop_back();
  }
  while (!small.empty()) {
    accept_[small.back()] = 1.0;
    small.pop_back();
  }
}

Element AliasTable::sample(RngStream& rng) const {
  auto i = static_cast<std::size_t>(rng.next_below(accept_.size()));
  if (rng.next_double() < accept_[i]) return static_cast<Element>(i);
  return alias_[i];
}

InstrumentedOracle::InstrumentedOracle(const Distribution& dist, RngStream rng)
    : dist_(&dist), alias_(dist.probs()), rng_(rng) {}

Element InstrumentedOracle::samp() {
  Element x = alias_.sample(rng_);
  ++stats_.samples_drawn;
  if (sink_) sink_->record_samp(x);
  return x;
}

PcondResult InstrumentedOracle::pcond(Element x, Element y) {
  ++stats_.pcond_queries;
  double px = (*dist_)[x];
  double py = (*dist_)[y];
  PcondResult result;
  if (x == y) {
    // Singleton query set; conditional sampling semantics on {x}.
    result = px > 0.0 ? PcondResult(x) : std::nullopt;
  } else if (px + py <= 0.0) {
    result = std::nullopt;
  } else {
    result = rng_.bernoulli(px / (px + py)) ? x : y;
  }
  if (sink_) sink_->record_pcond(x, y, result);
  return result;
}

std::uint64_t InstrumentedOracle::pcond_count_x(Element x, Element y, std::uint64_t q) {
  if (sink_) return PairOracle::pcond_count_x(x, y, q);  // per-call logging path
  double px = (*dist_)[x];
  double py = (*dist_)[y];
  if (x != y && px + py <= 0.0) throw std::runtime_error("pcond_count_x: oracle FAIL");
  stats_.pcond_queries += q;
  if (x == y) {
    if (px <= 0.0) throw std::runtime_error("pcond_count_x: oracle FAIL");
    return q;
  }
  const double p = px / (px + py);
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < q; ++i) count += rng_.bernoulli(p);
  return count;
}

PcondResult pcond_sim(const std::unordered_set<Element>& samples, Element z1, Element z2,
                      RngStream& rng) {
  bool in1 = samples.contains(z1);
  bool in2 = samples.contains(z2);
  if (!in1 && !in2) return std::nullopt;
  if (in1 && in2) return rng.bernoulli(0.5) ? z1 : z2;
  return in1 ? z1 : z2;
}

}  // namespace pcv
