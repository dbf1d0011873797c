#pragma once

#include <cstdint>
#include <vector>

#include "pcv/distribution.hpp"

namespace pcv {

/// Number of multiplicative probability buckets for domain size n and
/// resolution tau: ceil(log(n/tau) / log(1+tau)).
int num_buckets(std::uint64_t n, double tau);

/// Partition of [0, 1] into L+1 probability intervals. Bucket 0 holds masses
/// in [0, tau/n]; bucket l in (tau(1+tau)^{l-1}/n, tau(1+tau)^l/n]. The stored
/// boundary vector is the single source of truth for interval membership;
/// the closed-form index is only a starting guess (log arithmetic can be off
/// by one exactly at the endpoints).
class Bucketing {
 public:
  Bucketing(std::uint64_t n, double tau);

  std::uint64_t n() const { return n_; }
  double tau() const { return tau_; }
  int num_buckets_L() const { return L_; }

  /// Upper endpoint of bucket l, i.e. tau(1+tau)^l / n. The top endpoint is
  /// clamped to at least 1 so that every mass in [0,1] has a bucket.
  double boundary(int l) const { return boundaries_[static_cast<std::size_t>(l)]; }
  const std::vector<double>& boundaries() const { return boundaries_; }

  /// Representative position of a bucket (its upper endpoint).
  double position(int l) const { return boundary(l); }

  int bucket_of(double p) const;

  bool operator==(const Bucketing& other) const {
    return n_ == other.n_ && tau_ == other.tau_ && L_ == other.L_;
  }

 private:
  std::uint64_t n_;
  double tau_;
  int L_;
  std::vector<double> boundaries_;  // L+1 entries, strictly increasing
};

/// Per-bucket mass sequence {p_j} of a distribution, plus the per-bucket
/// element counts when the histogram was built from a full distribution
/// (counts are what make the relabelling/earth-mover correspondence exact).
struct ApproxHistogram {
  Bucketing bucketing;
  std::vector<double> masses;        // length L+1, each in [0,1]
  std::vector<double> counts;        // element counts; empty if unknown

  bool has_counts() const { return !counts.empty(); }
};

ApproxHistogram approx_histogram(const Distribution& dist, double tau);

/// Histogram from an externally supplied mass sequence (e.g. a learned one).
/// Counts are left empty.
ApproxHistogram histogram_from_masses(Bucketing bucketing, std::vector<double> masses);

}  // namespace pcv
