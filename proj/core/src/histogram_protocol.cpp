#include "pcv/histogram_protocol.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "pcv/compare.hpp"

namespace pcv {

HistogramSession HistogramSession::derive(std::uint64_t n, double tau_prime,
                                          const ConstantsProfile& profile) {
  if (!(tau_prime > 0.0) || tau_prime > 0.1) {
    throw std::invalid_argument("verify_histogram: tau' must be in (0, 0.1]");
  }
  HistogramSession s{};
  s.tau_prime = tau_prime;
  s.tau = profile.tau_factor * tau_prime;
  s.num_buckets_L = num_buckets(n, s.tau);
  const double l = static_cast<double>(s.num_buckets_L);
  s.samples_s = ConstantsProfile::scaled_count(10.0 * l / s.tau * std::log(10.0 * l),
                                               profile.scale_hist_samples);
  s.gamma =
      profile.relaxed_hist_gamma(s.tau / (static_cast<double>(s.samples_s) * (1.0 + s.tau)));
  s.relevant_threshold = s.tau / (10.0 * l);
  s.reject_threshold_formula =
      2.0 * tau_prime - (2.0 * s.tau + s.tau * s.tau) - s.tau / (1.0 + s.tau);
  if (!(s.reject_threshold_formula > 0.0)) {
    throw std::invalid_argument("verify_histogram: non-positive reject threshold");
  }
  return s;
}

HistogramResult verify_histogram(PairOracle& oracle, ProverStrategy& prover, double tau_prime,
                                 const ConstantsProfile& profile, RngStream& verifier_rng) {
  HistogramResult result;
  const std::uint64_t n = oracle.domain_size();
  result.session = HistogramSession::derive(n, tau_prime, profile);
  const HistogramSession& session = result.session;
  Bucketing bucketing(n, session.tau);
  OracleStats& stats = oracle.stats();

  const std::uint64_t tag_bits = index_bits(static_cast<std::uint64_t>(session.num_buckets_L) + 1);

  // Step 1: relevant buckets and their representatives.
  RelevantBucketsReply reply = prover.relevant_buckets(session.tau);
  {
    const std::uint64_t bits = reply.reps.size() * (element_bits(n) + tag_bits);
    stats.bits_sent_to_verifier += bits;
    result.declared.bits_sent_to_verifier += bits;
    stats.rounds += 1;
    result.declared.rounds += 1;
  }
  for (const RepresentativeClaim& rep : reply.reps) {
    if (rep.tag < 0 || rep.tag > session.num_buckets_L || rep.y >= n) {
      result.reject_reason = "malformed representative claim";
      return result;
    }
    if (result.representatives.contains(rep.tag)) {
      result.reject_reason = "multiple representatives share one tag";
      return result;
    }
    result.representatives[rep.tag] = rep.y;
  }

  // Step 2: certify each representative's claimed mass.
  const double delta_prime =
      1.0 / (20.0 * std::max<double>(1.0, static_cast<double>(reply.reps.size())));
  std::uint64_t rep_index = 0;
  for (const auto& [tag, y] : result.representatives) {
    RngStream sub_rng = verifier_rng.substream(1000 + rep_index++);
    ApproxSingleResult sub = approximate_single(oracle, prover, PointMassClaim{y, tag},
                                                session.tau, delta_prime, profile, sub_rng);
    result.declared += sub.declared;
    if (sub.decision == Decision::Reject) {
      result.reject_reason = "point certification failed: " + sub.reject_reason;
      return result;
    }
    result.certified_masses[tag] = sub.certified_mass;
  }

  // Step 3: sample set, sent to the prover.
  std::vector<Element> samples(session.samples_s);
  for (auto& x : samples) x = oracle.samp();
  result.declared.samples_drawn += samples.size();
  {
    const std::uint64_t bits = samples.size() * element_bits(n);
    stats.bits_sent_to_prover += bits;
    result.declared.bits_sent_to_prover += bits;
    stats.rounds += 1;
    result.declared.rounds += 1;
  }

  // Step 4: prover tags each sample.
  std::vector<int> tags = prover.tag_samples(samples, session.tau);
  if (tags.size() != samples.size()) {
    result.reject_reason = "tag list length mismatch";
    return result;
  }
  {
    const std::uint64_t bits = tags.size() * tag_bits;
    stats.bits_sent_to_verifier += bits;
    result.declared.bits_sent_to_verifier += bits;
  }

  // Step 5: empirical bucket masses from the tags (with multiplicity).
  std::vector<double> learned_masses(static_cast<std::size_t>(session.num_buckets_L) + 1, 0.0);
  for (int t : tags) {
    if (t < 0 || t > session.num_buckets_L) {
      result.reject_reason = "tag out of range";
      return result;
    }
    learned_masses[static_cast<std::size_t>(t)] += 1.0;
  }
  for (double& m : learned_masses) m /= static_cast<double>(samples.size());

  // Step 6: consistency of tags with the certified representative masses.
  // One comparison per distinct sampled element; the mass bound sums over
  // the sample *set*, so duplicates contribute once.
  std::unordered_map<Element, int> tag_of;
  std::vector<Element> distinct;
  distinct.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto [it, fresh] = tag_of.try_emplace(samples[i], tags[i]);
    if (fresh) {
      distinct.push_back(samples[i]);
    } else if (it->second != tags[i]) {
      result.reject_reason = "inconsistent tags for a repeated sample";
      return result;
    }
  }

  const double beta_cmp = 1.0 / (20.0 * static_cast<double>(samples.size()));
  double sum = 0.0;
  double sum_rep_mass = 0.0;
  for (Element x : distinct) {
    int tag = tag_of[x];
    auto rep_it = result.representatives.find(tag);
    if (rep_it == result.representatives.end()) {
      result.reject_reason = "sample tagged outside the claimed relevant set";
      return result;
    }
    const double rep_mass = result.certified_masses[tag];
    const double claimed_mass =
        session.tau * std::pow(1.0 + session.tau, tag) / static_cast<double>(n);
    double alpha;
    if (x == rep_it->second) {
      alpha = 1.0;
    } else {
      CompareOutcome cmp = compare(oracle, x, rep_it->second, session.gamma, beta_cmp, 2.0);
      result.declared.pcond_queries += compare_query_count(2.0, session.gamma, beta_cmp);
      if (!cmp.is_estimate()) {
        result.reject_reason = cmp.failed() ? "comparison FAIL" : "comparison returned High/Low";
        return result;
      }
      alpha = cmp.alpha;
    }
    sum += std::abs(rep_mass * alpha - claimed_mass);
    sum_rep_mass += rep_mass;
  }
  result.consistency_sum = sum;
  result.reject_threshold_used =
      profile.tight_sum_threshold
          ? 2.0 * tau_prime - (2.0 * session.tau + session.tau * session.tau) -
                session.gamma * sum_rep_mass
          : session.reject_threshold_formula;
  if (sum >= result.reject_threshold_used) {
    result.reject_reason = "mass consistency sum over threshold";
    return result;
  }

  result.learned = histogram_from_masses(bucketing, std::move(learned_masses));
  result.decision = Decision::Accept;
  return result;
}

PropertyDistance support_size_range_distance(std::uint64_t s_min, std::uint64_t s_max) {
  if (s_min == 0 || s_min > s_max) {
    throw std::invalid_argument("support_size_range_distance: need 1 <= s_min <= s_max");
  }
  return [s_min, s_max](const ApproxHistogram& h) {
    const Bucketing& bk = h.bucketing;
    int j_lo = bk.bucket_of(std::min(1.0, 1.0 / static_cast<double>(s_max)));
    int j_hi = bk.bucket_of(std::min(1.0, 1.0 / static_cast<double>(s_min)));
    double d = 0.0;
    for (int j = 0; j <= bk.num_buckets_L(); ++j) {
      int gap = 0;
      if (j < j_lo) gap = j_lo - j;
      if (j > j_hi) gap = j - j_hi;
      d += h.masses[static_cast<std::size_t>(j)] * bk.tau() * gap;
    }
    return d;
  };
}

PropertyDistance uniformity_over_support_distance() {
  return [](const ApproxHistogram& h) {
    const Bucketing& bk = h.bucketing;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j <= bk.num_buckets_L(); ++j) {
      double cost = 0.0;
      for (int k = 0; k <= bk.num_buckets_L(); ++k) {
        cost += h.masses[static_cast<std::size_t>(k)] * bk.tau() * std::abs(k - j);
      }
      best = std::min(best, cost);
    }
    return best;
  };
}

Decision decide_label_invariant(const ApproxHistogram& histogram,
                                const PropertyDistance& property_distance, double tau_c,
                                double tau_f) {
  if (!(tau_c < tau_f)) {
    throw std::invalid_argument("decide_label_invariant: need tau_c < tau_f");
  }
  return property_distance(histogram) <= 0.5 * (tau_c + tau_f) ? Decision::Accept
                                                               : Decision::Reject;
}

}  // namespace pcv
