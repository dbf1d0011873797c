#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace pcv {

/// Scale factors applied to derived sample/query counts. Every factor lives
/// in (0, 1]; 1.0 everywhere reproduces the protocols' own constants, which
/// are far outside desk scale for most parameter settings. Counts are scaled
/// first and all dependent accuracies are re-derived from the scaled counts,
/// so a scaled protocol stays internally consistent.
///
/// scale_compare_q relaxes comparison accuracy: the accuracy target gamma is
/// widened to gamma/sqrt(scale), which cuts the (deterministic) query-count
/// formula by exactly the scale factor.
struct ConstantsProfile {
  std::string name = "paper";

  double tau_factor = 0.01;  // histogram session: tau = tau_factor * tau'

  double scale_est_rings = 1.0;   // neighborhood-estimate ring count T
  double scale_est_samples = 1.0; // neighborhood-estimate sample count m
  double scale_sampler_draws = 1.0;
  double scale_amp_t1 = 1.0;
  double scale_amp_t2 = 1.0;
  double scale_hist_samples = 1.0;
  double scale_small_s1 = 1.0;
  double scale_small_s2 = 1.0;
  double scale_compare_q = 1.0;       // neighborhood-classification comparisons
  double scale_hist_compare_q = 1.0;  // histogram sum-stage comparisons

  double c_sample = 0.01;        // constant in the sampler's failure budget
  int sampler_retry_budget = 3;  // |_ retries before the caller rejects

  /// Sum-check threshold term: false uses the worst-case s*gamma slack, true
  /// uses the data-dependent sum of claimed representative masses (identical
  /// at unscaled constants, strictly sharper when gamma is relaxed).
  bool tight_sum_threshold = false;

  static ConstantsProfile paper();
  static ConstantsProfile relaxed_default();

  /// ceil(scale * value), at least 1.
  static std::uint64_t scaled_count(double value, double scale) {
    double v = std::ceil(value * scale);
    if (v < 1.0) return 1;
    return static_cast<std::uint64_t>(v);
  }

  /// Widened accuracy target implementing scale_compare_q. Capped at 1/4 so
  /// the result stays a usable comparison accuracy.
  double relaxed_gamma(double gamma) const {
    return std::min(0.25, gamma / std::sqrt(scale_compare_q));
  }
  double relaxed_hist_gamma(double gamma) const {
    return std::min(0.25, gamma / std::sqrt(scale_hist_compare_q));
  }
};

}  // namespace pcv
