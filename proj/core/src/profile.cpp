#include "pcv/profile.hpp"

namespace pcv {

ConstantsProfile ConstantsProfile::paper() { return ConstantsProfile{}; }

ConstantsProfile ConstantsProfile::relaxed_default() {
  ConstantsProfile p;
  p.name = "relaxed-default";
  // Tuned for domain sizes around 1e4 with tau' ~ 0.1. Counts are pulled to
  // the order of tens-to-thousands; the honest/cheating separation of every
  // protocol stays measurable at these sizes (the acceptance suite pins the
  // exact statistical requirements).
  p.tau_factor = 0.1;
  p.scale_est_rings = 1.2e-13;
  p.scale_est_samples = 4e-10;
  p.scale_sampler_draws = 1e-6;
  p.scale_amp_t1 = 1.0;
  p.scale_amp_t2 = 1.0;
  p.scale_hist_samples = 6e-4;
  p.scale_small_s1 = 1.0;
  p.scale_small_s2 = 1.0;
  p.scale_compare_q = 1.77e-5;
  p.scale_hist_compare_q = 3.9e-9;
  p.tight_sum_threshold = true;
  return p;
}

}  // namespace pcv
