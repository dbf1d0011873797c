#include <doctest.h>

#include <cmath>
#include <vector>

#include "pcv/bucketing.hpp"
#include "pcv/distances.hpp"
#include "pcv/fixtures.hpp"
#include "pcv/prover.hpp"
#include "pcv/representative.hpp"

using namespace pcv;

namespace {

Distribution flat_fixture(std::uint64_t n, std::uint64_t support) {
  Json params;
  params["support"] = support;
  return generate_fixture("flat", params, n, RngStream(0, 0));
}

}  // namespace

TEST_CASE("honest tags recompute the bucket index") {
  RngStream rng(3, 0);
  std::vector<double> w(80);
  for (auto& x : w) x = rng.next_double() + 0.01;
  double total = stable_sum(w);
  for (auto& x : w) x /= total;
  w[0] += 1.0 - stable_sum(w);
  Distribution d{std::move(w)};
  Bucketing bk(d.n(), 0.2);
  auto prover = make_prover(AdversaryConfig::honest(), d, RngStream(3, 1));
  std::vector<Element> sample;
  for (Element x = 0; x < d.n(); ++x) sample.push_back(x);
  std::vector<int> tags = prover->tag_samples(sample, 0.2);
  for (Element x = 0; x < d.n(); ++x) {
    CHECK(tags[x] == honest_tag(d, x, bk));
    CHECK(tags[x] == bk.bucket_of(d[x]));
  }
  // Zero-mass elements tag into bucket 0.
  Distribution point{std::vector<double>{1.0, 0.0}};
  CHECK(honest_tag(point, 1, Bucketing(2, 0.5)) == 0);
}

TEST_CASE("honest relevant buckets carry valid representatives") {
  Json params;
  params["sizes"] = std::vector<std::uint64_t>{40, 80};
  params["ratio"] = 5.0;
  Distribution d = generate_fixture("two_level", params, 400, RngStream(5, 0));
  double tau = 0.2;
  auto prover = make_prover(AdversaryConfig::honest(), d, RngStream(5, 1));
  RelevantBucketsReply reply = prover->relevant_buckets(tau);

  ApproxHistogram h = approx_histogram(d, tau);
  double threshold = tau / (10.0 * h.bucketing.num_buckets_L());
  std::size_t expected = 0;
  for (double m : h.masses) expected += (m >= threshold);
  CHECK(reply.reps.size() == expected);
  for (const auto& rep : reply.reps) {
    CHECK(h.masses[static_cast<std::size_t>(rep.tag)] >= threshold);
    CHECK(honest_tag(d, rep.y, h.bucketing) == rep.tag);
    CHECK(neighborhood_mass(d, rep.y, tau / 3.0) >=
          h.masses[static_cast<std::size_t>(rep.tag)] / 3.0 - 1e-12);
  }
}

TEST_CASE("slide(0) is transcript-identical to honest") {
  Distribution d = flat_fixture(300, 60);
  auto honest = make_prover(AdversaryConfig::honest(), d, RngStream(7, 9));
  auto slide0 = make_prover(AdversaryConfig::slide(0), d, RngStream(7, 9));

  RelevantBucketsReply r1 = honest->relevant_buckets(0.1);
  RelevantBucketsReply r2 = slide0->relevant_buckets(0.1);
  REQUIRE(r1.reps.size() == r2.reps.size());
  for (std::size_t i = 0; i < r1.reps.size(); ++i) {
    CHECK(r1.reps[i].y == r2.reps[i].y);
    CHECK(r1.reps[i].tag == r2.reps[i].tag);
  }

  std::vector<Element> sample{1, 5, 99, 200, 7};
  CHECK(honest->tag_samples(sample, 0.1) == slide0->tag_samples(sample, 0.1));

  SupportContext ctx{std::nullopt, 30, 50, 70, 140};
  CHECK(honest->claim_support(ctx) == slide0->claim_support(ctx));
  std::vector<Element> tuple{3, 250, 7, 299};
  CHECK(honest->guess_planted_index(tuple, ctx) == slide0->guess_planted_index(tuple, ctx));
}

TEST_CASE("slide shifts every tag by the offset") {
  Distribution d = flat_fixture(300, 60);
  Bucketing bk(300, 0.1);
  auto prover = make_prover(AdversaryConfig::slide(4), d, RngStream(8, 0));
  std::vector<Element> sample{0, 10, 59, 100};
  std::vector<int> tags = prover->tag_samples(sample, 0.1);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    int honest = bk.bucket_of(d[sample[i]]);
    CHECK(tags[i] == std::min(honest + 4, bk.num_buckets_L()));
  }
}

TEST_CASE("greedy planted-index guesses") {
  SupportContext ctx{std::nullopt, 1, 2, 3, 6};
  SUBCASE("single in-support candidate is forced") {
    Distribution d{std::vector<double>{0.5, 0.5, 0.0, 0.0}};
    auto prover = make_prover(AdversaryConfig::greedy_test2(), d, RngStream(9, 0));
    std::vector<Element> tuple{2, 3, 1, 2};
    for (int i = 0; i < 50; ++i) CHECK(prover->guess_planted_index(tuple, ctx) == 2);
  }
  SUBCASE("flat ties split evenly") {
    Distribution d{std::vector<double>{0.5, 0.5, 0.0, 0.0}};
    auto prover = make_prover(AdversaryConfig::greedy_test2(), d, RngStream(10, 0));
    std::vector<Element> tuple{0, 2, 1};
    int first = 0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) first += (prover->guess_planted_index(tuple, ctx) == 0);
    CHECK(std::abs(first / static_cast<double>(trials) - 0.5) <= 0.02);
  }
  SUBCASE("heavier candidates win outright") {
    Distribution d{std::vector<double>{0.7, 0.3, 0.0, 0.0}};
    auto prover = make_prover(AdversaryConfig::greedy_test2(), d, RngStream(11, 0));
    std::vector<Element> tuple{1, 0, 3};
    for (int i = 0; i < 50; ++i) CHECK(prover->guess_planted_index(tuple, ctx) == 1);
  }
}

TEST_CASE("prover answers depend only on its inputs") {
  // The planted position is verifier-private: permuting which index is
  // "planted" must not change the prover's response when the tuple and the
  // prover stream are identical.
  Distribution d = flat_fixture(100, 30);
  SupportContext ctx{std::nullopt, 10, 20, 40, 80};
  std::vector<Element> tuple{5, 77, 12, 29, 80};
  auto p1 = make_prover(AdversaryConfig::greedy_test2(), d, RngStream(12, 4));
  auto p2 = make_prover(AdversaryConfig::greedy_test2(), d, RngStream(12, 4));
  for (int i = 0; i < 20; ++i) {
    CHECK(p1->guess_planted_index(tuple, ctx) == p2->guess_planted_index(tuple, ctx));
  }
}

TEST_CASE("restricted contexts bound the claimed support") {
  Distribution d = flat_fixture(200, 50);
  SupportContext ctx{NeighborhoodRestriction{0, 0.5}, 10, 20, 30, 60};
  auto prover = make_prover(AdversaryConfig::slide(2), d, RngStream(13, 0));
  std::vector<Element> claimed = prover->claim_support(ctx);
  // True restricted support is 50 > B = 30: a window-consistent prover trims.
  CHECK(claimed.size() == 30);
  for (Element y : claimed) CHECK(d[y] > 0.0);
}

TEST_CASE("support inflate and deflate scale the claim") {
  Distribution d = flat_fixture(200, 40);
  SupportContext ctx{std::nullopt, 10, 20, 100, 150};
  auto inflate = make_prover(AdversaryConfig::support_inflate(2.0), d, RngStream(14, 0));
  CHECK(inflate->claim_support(ctx).size() == 80);
  auto deflate = make_prover(AdversaryConfig::support_deflate(2.0), d, RngStream(14, 1));
  CHECK(deflate->claim_support(ctx).size() == 20);
}
