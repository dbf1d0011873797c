#pragma once

#include <cstdint>
#include <string>

#include "pcv/neighborhood_estimate.hpp"
#include "pcv/oracle.hpp"
#include "pcv/profile.hpp"
#include "pcv/prover.hpp"
#include "pcv/support_protocol.hpp"

namespace pcv {

/// Prover's claim about one point: its bucket tag and, implicitly, the mass
/// tau (1+tau)^{tag} / N, together with the promise that the point has a
/// heavy tau/3-neighborhood.
struct PointMassClaim {
  Element y_star;
  int j_star;
};

struct ApproxSingleParams {
  double kappa;
  double beta;
  double eta;
  double delta_c;
  double delta_s;
  int num_buckets_L;

  static ApproxSingleParams derive(std::uint64_t n, double tau, double delta_prime,
                                   const ConstantsProfile& profile);
};

/// The four support-window bounds the verifier derives from the estimate and
/// the claimed tag. Exposed separately so they can be checked in isolation.
SupportContext approx_single_bounds(std::uint64_t n, double tau, int j_star, double w_hat,
                                    double eta, double alpha_t);

struct ApproxSingleResult {
  Decision decision = Decision::Reject;
  double certified_mass = 0.0;  // tau (1+tau)^{j*} / N when accepted
  std::string reject_reason;
  NeighborhoodEstimate estimate;
  SupportContext bounds;
  bool used_large_protocol = false;
  OracleStats declared;
};

/// Certifies the claimed point mass by estimating the neighborhood mass of
/// y* and then running a support-size protocol on the hidden distribution
/// restricted to that neighborhood, with the window the claimed tag implies.
/// An honest claim is rejected with probability <~ delta'; a tag off by two
/// or more buckets (or a fabricated heavy neighborhood) is accepted with
/// probability <~ delta', at unscaled constants.
ApproxSingleResult approximate_single(PairOracle& oracle, ProverStrategy& prover,
                                      const PointMassClaim& claim, double tau,
                                      double delta_prime, const ConstantsProfile& profile,
                                      RngStream& verifier_rng);

}  // namespace pcv
