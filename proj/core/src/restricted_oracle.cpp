#include "pcv/restricted_oracle.hpp"

namespace pcv {

Element NeighborhoodRestrictedOracle::samp() {
  for (int attempt = 0; attempt <= retry_budget_; ++attempt) {
    NeighborhoodSampleResult r =
        sample_from_neighborhood(*parent_, *classifier_, sampler_params_, rng_);
    raw_samples_used_ += r.samples_used;
    if (r.element.has_value()) {
      ++restricted_samples_served_;
      return *r.element;
    }
  }
  throw SamplerExhausted{};
}

PcondResult NeighborhoodRestrictedOracle::pcond(Element x, Element y) {
  bool in_x = inside(x);
  bool in_y = inside(y);
  if (in_x && in_y) {
    ++delegated_pcond_queries_;
    return parent_->pcond(x, y);
  }
  ++shortcircuit_pcond_queries_;
  if (in_x) return x;
  if (in_y) return y;
  return std::nullopt;
}

std::uint64_t NeighborhoodRestrictedOracle::pcond_count_x(Element x, Element y, std::uint64_t q) {
  bool in_x = inside(x);
  bool in_y = y == x ? in_x : inside(y);
  if (in_x && in_y) {
    delegated_pcond_queries_ += q;
    return parent_->pcond_count_x(x, y, q);
  }
  shortcircuit_pcond_queries_ += q;
  if (in_x) return q;
  if (in_y) return 0;
  throw std::runtime_error("pcond_count_x: oracle FAIL");
}

}  // namespace pcv
