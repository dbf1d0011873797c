#pragma once

#include <vector>

#include "pcv/bucketing.hpp"
#include "pcv/distribution.hpp"

namespace pcv {

double tv_distance(const Distribution& a, const Distribution& b);

/// Minimum TV distance over all relabelings of the domain. Equals half the
/// L1 distance between the two mass sequences sorted in non-increasing order.
double rl_distance(const Distribution& a, const Distribution& b);

struct NeighborhoodSpec {
  Element center;
  double kappa;  // > 0
};

/// All y with probs[center]/(1+kappa) <= probs[y] <= (1+kappa)*probs[center].
std::vector<Element> neighborhood(const Distribution& dist, const NeighborhoodSpec& spec);

/// Total mass of the kappa-neighborhood of `center`.
double neighborhood_mass(const Distribution& dist, Element center, double kappa);

enum class EmdWeightMode {
  kCounts,     // per-bucket element counts; RL(D,D') = EMD/2 on exact histograms
  kFractions,  // counts / n
};

/// One-dimensional optimal transport cost between two histograms over the
/// same bucketing. Each bucket sits at its upper-endpoint position and the
/// cost is the cumulative-difference sum, which is exact for 1-D transport.
double emd_histograms(const ApproxHistogram& a, const ApproxHistogram& b, EmdWeightMode mode);

}  // namespace pcv
