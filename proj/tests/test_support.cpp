#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pcv/fixtures.hpp"
#include "pcv/oracle.hpp"
#include "pcv/prover.hpp"
#include "pcv/support_protocol.hpp"

using namespace pcv;

namespace {

Distribution flat_fixture(std::uint64_t n, std::uint64_t support) {
  Json params;
  params["support"] = support;
  return generate_fixture("flat", params, n, RngStream(0, 0));
}

// Prover that parrots a fixed element regardless of the candidate list.
class StubbornProver final : public ProverStrategy {
 public:
  explicit StubbornProver(Element answer) : answer_(answer) {}
  RelevantBucketsReply relevant_buckets(double) override { return {}; }
  std::vector<int> tag_samples(const std::vector<Element>& s, double) override {
    return std::vector<int>(s.size(), 0);
  }
  std::vector<Element> claim_support(const SupportContext&) override { return {answer_}; }
  std::optional<Element> pick_in_support(const std::vector<Element>&,
                                         const SupportContext&) override {
    return answer_;
  }
  std::size_t guess_planted_index(const std::vector<Element>&, const SupportContext&) override {
    return 1u << 20;  // deliberately out of range
  }

 private:
  Element answer_;
};

}  // namespace

TEST_CASE("rejection profile closed forms") {
  SUBCASE("test1 at c = 0.25") {
    RejectionProfile p = rejection_profile_test1(400, 200, 0.1);
    CHECK(p.p_reject == doctest::Approx(0.8274758320).epsilon(1e-9));
    CHECK(p.q_reject == doctest::Approx(0.875).epsilon(1e-12));
    CHECK(p.delta_gap >= 0.03125);  // c^2 / 2
    CHECK(p.threshold == doctest::Approx(p.p_reject + p.delta_gap / 2));
  }
  SUBCASE("test2 at lambda = 0.5, c = 1/36") {
    RejectionProfile p = rejection_profile_test2(5000, 10000, 0.1);
    CHECK(p.p_reject == doctest::Approx(0.0073302469).epsilon(1e-8));
    CHECK(p.q_reject == doctest::Approx(0.0078272924).epsilon(1e-8));
    CHECK(p.delta_gap >= 0.5 / (36.0 * 36.0));  // c^2 lambda
  }
  SUBCASE("trial count diverges as the window shrinks") {
    std::uint64_t prev = 0;
    for (double half : {0.25, 0.1, 0.04, 0.02}) {
      RejectionProfile p = rejection_profile_test1(1000, 1000 * (1 - 2 * half), 0.1);
      CHECK(p.trials > prev);
      prev = p.trials;
    }
  }
  SUBCASE("degenerate windows throw") {
    CHECK_THROWS_AS(rejection_profile_test1(100, 100, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(rejection_profile_test2(100, 100, 0.1), std::invalid_argument);
    // Exact amplifier bound with a crushing alpha: q <= p must throw.
    ConstantsProfile prof;
    CHECK_THROWS_AS(amplifier_profile_test2(10000, 6000, 9000, 10.0, 0.1, prof),
                    std::invalid_argument);
  }
}

TEST_CASE("support claim validation") {
  SupportClaim ok{100, 200, 300, 400};
  CHECK_NOTHROW(ok.validate(1000));
  CHECK_THROWS_AS((SupportClaim{200, 200, 300, 400}).validate(1000), std::invalid_argument);
  CHECK_THROWS_AS((SupportClaim{100, 200, 300, 400}).validate(350), std::invalid_argument);
  CHECK_THROWS_AS((SupportClaim{100, 310, 300, 400}).validate(1000), std::invalid_argument);
}

TEST_CASE("small support params") {
  // delta_s = 0.1, A/A' = 2, alpha = 0, B'/B = 2 -> s1 = s2 = 4.
  SupportContext ctx{std::nullopt, 16, 32, 48, 96};
  ConstantsProfile prof;
  SmallSupportParams p = SmallSupportParams::derive(ctx, 0.0, 0.1, prof);
  CHECK(p.s1 == 4);
  CHECK(p.s2 == 4);
}

TEST_CASE("test1 single runs") {
  const std::uint64_t n = 10000;
  SupportContext ctx{std::nullopt, 200, 400, 500, 1000};

  SUBCASE("full support accepts at high rate") {
    Distribution d = flat_fixture(n, n);
    InstrumentedOracle oracle(d, RngStream(1, 0));
    auto prover = make_prover(AdversaryConfig::honest(), d, RngStream(1, 1));
    RngStream vrng(1, 2);
    int accepts = 0;
    const int runs = 400;
    for (int i = 0; i < runs; ++i) {
      accepts += (test1_large(oracle, *prover, 0, ctx, vrng).decision == Decision::Accept);
    }
    CHECK(accepts > runs * 0.95);
  }
  SUBCASE("resource accounting matches the declared costs") {
    Distribution d = flat_fixture(n, 400);
    InstrumentedOracle oracle(d, RngStream(2, 0));
    auto prover = make_prover(AdversaryConfig::honest(), d, RngStream(2, 1));
    RngStream vrng(2, 2);
    RunResult run = test1_large(oracle, *prover, 0, ctx, vrng);
    CHECK(oracle.stats() == run.declared);
    // s = ceil(c N / A) with c = 0.25 -> 7 elements of 14 bits each.
    CHECK(run.declared.bits_sent_to_prover == 7 * 14);
  }
  SUBCASE("empty intersection with an honest prover is a guaranteed reject") {
    Distribution d = flat_fixture(n, 4);  // support far below A'
    InstrumentedOracle oracle(d, RngStream(3, 0));
    auto prover = make_prover(AdversaryConfig::honest(), d, RngStream(3, 1));
    RngStream vrng(3, 2);
    int rejects = 0;
    const int runs = 200;
    for (int i = 0; i < runs; ++i) {
      rejects += (test1_large(oracle, *prover, 0, ctx, vrng).decision == Decision::Reject);
    }
    CHECK(rejects > runs * 0.95);
  }
  SUBCASE("an exhibit outside the sent set is rejected") {
    Distribution d = flat_fixture(n, n);
    InstrumentedOracle oracle(d, RngStream(4, 0));
    StubbornProver prover(9999);  // in support, but (almost surely) not in Y
    RngStream vrng(4, 2);
    int rejects = 0;
    for (int i = 0; i < 100; ++i) {
      rejects += (test1_large(oracle, prover, 0, ctx, vrng).decision == Decision::Reject);
    }
    CHECK(rejects >= 99);
  }
}

TEST_CASE("test2 single runs") {
  const std::uint64_t n = 10000;
  SupportContext ctx{std::nullopt, 250, 500, 600, 1200};

  SUBCASE("small support accepts at high rate under the honest prover") {
    Distribution d = flat_fixture(n, 500);
    InstrumentedOracle oracle(d, RngStream(5, 0));
    auto prover = make_prover(AdversaryConfig::honest(), d, RngStream(5, 1));
    RngStream vrng(5, 2);
    int rejects = 0;
    const int runs = 2000;
    for (int i = 0; i < runs; ++i) {
      rejects += (test2_large(oracle, *prover, ctx, vrng).decision == Decision::Reject);
    }
    // Exact single-run rejection at s = 1, supp = 500: P(z in supp)/2.
    double predict = 0.5 * 500.0 / static_cast<double>(n);
    double sigma = std::sqrt(predict / runs);
    CHECK(std::abs(rejects / static_cast<double>(runs) - predict) <= 4 * sigma + 0.002);
  }
  SUBCASE("greedy prover on an oversized support is caught more often") {
    Distribution d = flat_fixture(n, 1200);
    InstrumentedOracle oracle(d, RngStream(6, 0));
    auto prover = make_prover(AdversaryConfig::greedy_test2(), d, RngStream(6, 1));
    RngStream vrng(6, 2);
    int rejects = 0;
    const int runs = 2000;
    for (int i = 0; i < runs; ++i) {
      rejects += (test2_large(oracle, *prover, ctx, vrng).decision == Decision::Reject);
    }
    double predict = 0.5 * 1200.0 / static_cast<double>(n);
    double sigma = std::sqrt(predict / runs);
    CHECK(std::abs(rejects / static_cast<double>(runs) - predict) <= 4 * sigma + 0.002);
  }
  SUBCASE("out-of-range index is rejected") {
    Distribution d = flat_fixture(n, 500);
    InstrumentedOracle oracle(d, RngStream(7, 0));
    StubbornProver prover(0);
    RngStream vrng(7, 2);
    CHECK(test2_large(oracle, prover, ctx, vrng).decision == Decision::Reject);
  }
}

TEST_CASE("amplified support verification") {
  const std::uint64_t n = 10000;
  SupportContext ctx{std::nullopt, 2500, 5000, 6000, 9000};
  ConstantsProfile prof;
  const double delta = 0.1;

  auto run_once = [&](std::uint64_t seed, std::uint64_t support, AdversaryConfig cfg) {
    Distribution d = flat_fixture(n, support);
    InstrumentedOracle oracle(d, RngStream(seed, 0));
    auto prover = make_prover(cfg, d, RngStream(seed, 1));
    RngStream vrng(seed, 2);
    return verify_support_large(oracle, *prover, ctx, 0.0, delta, prof, vrng);
  };

  SUBCASE("honest in-window accepts") {
    int accepts = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      accepts += (run_once(s, 5500, AdversaryConfig::honest()).decision == Decision::Accept);
    }
    CHECK(accepts >= 18);
  }
  SUBCASE("support below A' rejects") {
    int rejects = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      rejects +=
          (run_once(s, 2500, AdversaryConfig::greedy_test2()).decision == Decision::Reject);
    }
    CHECK(rejects >= 18);
  }
  SUBCASE("support at B' with the greedy prover rejects") {
    int rejects = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      rejects +=
          (run_once(s, 9000, AdversaryConfig::greedy_test2()).decision == Decision::Reject);
    }
    CHECK(rejects >= 18);
  }
  SUBCASE("declared resources match the oracle ledger") {
    Distribution d = flat_fixture(n, 5500);
    InstrumentedOracle oracle(d, RngStream(99, 0));
    auto prover = make_prover(AdversaryConfig::honest(), d, RngStream(99, 1));
    RngStream vrng(99, 2);
    AmplifiedResult r = verify_support_large(oracle, *prover, ctx, 0.0, delta, prof, vrng);
    CHECK(oracle.stats() == r.declared);
  }
}

TEST_CASE("small support protocol") {
  const std::uint64_t n = 10000;
  SupportContext ctx{std::nullopt, 32, 64, 64, 128};
  ConstantsProfile prof;

  SUBCASE("honest prover on a conforming fixture accepts") {
    int accepts = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      Distribution d = flat_fixture(n, 64);
      InstrumentedOracle oracle(d, RngStream(s, 0));
      auto prover = make_prover(AdversaryConfig::honest(), d, RngStream(s, 1));
      RngStream vrng(s, 2);
      SmallSupportResult r =
          verify_support_small(oracle, *prover, ctx, 0.0, 0.05, 0.05, prof, vrng);
      accepts += (r.decision == Decision::Accept);
      CHECK(oracle.stats() == r.declared);
    }
    CHECK(accepts >= 48);
  }
  SUBCASE("deflating prover claims too-small a set and is rejected on size") {
    Distribution d = flat_fixture(n, 64);
    InstrumentedOracle oracle(d, RngStream(1, 0));
    auto prover = make_prover(AdversaryConfig::support_deflate(4.0), d, RngStream(1, 1));
    RngStream vrng(1, 2);
    SmallSupportResult r =
        verify_support_small(oracle, *prover, ctx, 0.0, 0.05, 0.05, prof, vrng);
    CHECK(r.decision == Decision::Reject);
    CHECK(r.reject_reason == "claimed support size outside [A, B]");
  }
  SUBCASE("inflating prover gets caught on a membership spot-check") {
    // True support 32 < A; the prover pads its claim with unsupported
    // elements to reach the window, and the one-sided check kills it.
    Distribution d = flat_fixture(n, 32);
    int rejects = 0;
    for (std::uint64_t s = 0; s < 50; ++s) {
      InstrumentedOracle oracle(d, RngStream(s + 100, 0));
      auto prover = make_prover(AdversaryConfig::support_inflate(2.0), d, RngStream(s, 1));
      RngStream vrng(s, 2);
      SmallSupportResult r =
          verify_support_small(oracle, *prover, ctx, 0.0, 0.05, 0.05, prof, vrng);
      rejects += (r.decision == Decision::Reject);
    }
    CHECK(rejects >= 45);
  }
  SUBCASE("oversized true support escapes containment") {
    // Support B' = 128 with the heaviest-B claim: accept rate ~ (B/B')^{s2}.
    Distribution d = flat_fixture(n, 128);
    int accepts = 0;
    const int runs = 400;
    for (std::uint64_t s = 0; s < runs; ++s) {
      InstrumentedOracle oracle(d, RngStream(s + 500, 0));
      auto prover = make_prover(AdversaryConfig::greedy_test2(), d, RngStream(s, 1));
      RngStream vrng(s, 2);
      SmallSupportResult r =
          verify_support_small(oracle, *prover, ctx, 0.0, 0.05, 0.05, prof, vrng);
      accepts += (r.decision == Decision::Accept);
    }
    SmallSupportParams p = SmallSupportParams::derive(ctx, 0.0, 0.05, prof);
    double bound = std::pow(0.5, static_cast<double>(p.s2));
    double sigma = std::sqrt(bound * (1 - bound) / runs);
    CHECK(accepts / static_cast<double>(runs) <= bound + 4 * sigma);
  }
  SUBCASE("malformed claims are rejected") {
    Distribution d = flat_fixture(n, 64);
    InstrumentedOracle oracle(d, RngStream(9, 0));
    StubbornProver prover(3);  // claims a single element: size below A
    RngStream vrng(9, 2);
    SmallSupportResult r =
        verify_support_small(oracle, prover, ctx, 0.0, 0.05, 0.05, prof, vrng);
    CHECK(r.decision == Decision::Reject);
  }
}
