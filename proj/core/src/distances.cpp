#include "pcv/distances.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace pcv {

double tv_distance(const Distribution& a, const Distribution& b) {
  if (a.n() != b.n()) throw std::invalid_argument("tv_distance: domain mismatch");
  double l1 = 0.0;
  for (Element x = 0; x < a.n(); ++x) l1 += std::abs(a[x] - b[x]);
  return 0.5 * l1;
}

double rl_distance(const Distribution& a, const Distribution& b) {
  if (a.n() != b.n()) throw std::invalid_argument("rl_distance: domain mismatch");
  std::vector<double> sa = a.probs();
  std::vector<double> sb = b.probs();
  std::sort(sa.begin(), sa.end(), std::greater<double>());
  std::sort(sb.begin(), sb.end(), std::greater<double>());
  double l1 = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) l1 += std::abs(sa[i] - sb[i]);
  return 0.5 * l1;
}

std::vector<Element> neighborhood(const Distribution& dist, const NeighborhoodSpec& spec) {
  if (!(spec.kappa > 0.0)) throw std::invalid_argument("neighborhood: kappa must be > 0");
  double center_mass = dist[spec.center];
  double lo = center_mass / (1.0 + spec.kappa);
  double hi = center_mass * (1.0 + spec.kappa);
  std::vector<Element> out;
  for (Element y = 0; y < dist.n(); ++y) {
    if (dist[y] >= lo && dist[y] <= hi) out.push_back(y);
  }
  return out;
}

double neighborhood_mass(const Distribution& dist, Element center, double kappa) {
  double center_mass = dist[center];
  double lo = center_mass / (1.0 + kappa);
  double hi = center_mass * (1.0 + kappa);
  double total = 0.0;
  for (Element y = 0; y < dist.n(); ++y) {
    if (dist[y] >= lo && dist[y] <= hi) total += dist[y];
  }
  return total;
}

double emd_histograms(const ApproxHistogram& a, const ApproxHistogram& b, EmdWeightMode mode) {
  if (!(a.bucketing == b.bucketing)) {
    throw std::invalid_argument("emd_histograms: mismatched bucketing");
  }
  const Bucketing& bk = a.bucketing;
  auto weights = [&](const ApproxHistogram& h) {
    std::vector<double> w;
    if (h.has_counts()) {
      w = h.counts;
    } else {
      // Recover counts from masses via the representative positions; exact
      // when every element's mass sits on its bucket endpoint.
      w.resize(h.masses.size());
      for (std::size_t j = 0; j < h.masses.size(); ++j) {
        w[j] = h.masses[j] / bk.position(static_cast<int>(j));
      }
    }
    if (mode == EmdWeightMode::kFractions) {
      for (double& x : w) x /= static_cast<double>(bk.n());
    }
    return w;
  };
  std::vector<double> wa = weights(a);
  std::vector<double> wb = weights(b);
  double ta = stable_sum(wa);
  double tb = stable_sum(wb);
  if (std::abs(ta - tb) > 1e-9 * std::max(1.0, std::max(ta, tb))) {
    throw std::invalid_argument("emd_histograms: weight mismatch");
  }
  double cost = 0.0;
  double cum = 0.0;
  for (int l = 0; l < bk.num_buckets_L(); ++l) {
    cum += wa[static_cast<std::size_t>(l)] - wb[static_cast<std::size_t>(l)];
    cost += std::abs(cum) * (bk.position(l + 1) - bk.position(l));
  }
  return cost;
}

}  // namespace pcv
