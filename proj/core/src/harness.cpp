#include "pcv/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pcv/approximate_single.hpp"
#include "pcv/bucketing.hpp"
#include "pcv/compare.hpp"
#include "pcv/distances.hpp"
#include "pcv/fixtures.hpp"
#include "pcv/histogram_protocol.hpp"
#include "pcv/lower_bound.hpp"
#include "pcv/neighborhood_estimate.hpp"
#include "pcv/prover.hpp"
#include "pcv/representative.hpp"
#include "pcv/support_check.hpp"
#include "pcv/support_protocol.hpp"

namespace pcv {

namespace {

constexpr int kSchemaVersion = 1;

// Substream ids within one run.
constexpr std::uint64_t kFixturePhase = 0;
constexpr std::uint64_t kOraclePhase = 1;
constexpr std::uint64_t kVerifierPhase = 2;
constexpr std::uint64_t kProverPhase = 3;

AdversaryConfig adversary_from_json(const Json& j) {
  AdversaryConfig cfg;
  if (j.is_null() || j.empty()) return cfg;
  cfg.kind = AdversaryConfig::kind_from_name(j.value("kind", std::string("honest")));
  cfg.offset = j.value("offset", 0);
  cfg.factor = j.value("factor", 1.0);
  cfg.target_bucket = j.value("target_bucket", -1);
  return cfg;
}

SupportContext claim_from_json(const Json& j, std::uint64_t n) {
  SupportClaim claim{j.at("a_lo_strict").get<std::int64_t>(), j.at("a_lo").get<std::int64_t>(),
                     j.at("b_hi").get<std::int64_t>(), j.at("b_hi_strict").get<std::int64_t>()};
  claim.validate(n);
  return claim.context();
}

Distribution build_fixture(const ExperimentConfig& config, std::uint64_t run_id) {
  if (config.fixture.contains("file")) {
    return load_distribution(config.fixture.at("file").get<std::string>());
  }
  bool per_run = config.fixture.value("per_run", false);
  RngStream stream = per_run ? RngStream(config.base_seed, run_id).substream(kFixturePhase)
                             : RngStream(config.base_seed, 0).substream(kFixturePhase);
  return generate_fixture(config.fixture.at("generator").get<std::string>(),
                          config.fixture.value("params", Json::object()), config.domain_n,
                          stream);
}

Json bounds_to_json(const SupportContext& b) {
  Json j;
  j["a_lo_strict"] = b.a_lo_strict;
  j["a_lo"] = b.a_lo;
  j["b_hi"] = b.b_hi;
  j["b_hi_strict"] = b.b_hi_strict;
  return j;
}

/// Harness-side pick of the point-mass claim for approx-single experiments:
/// the honest representative of the distribution's heaviest relevant bucket,
/// with the claimed tag shifted by `tag_offset`.
PointMassClaim auto_claim(const Distribution& dist, double tau, int tag_offset) {
  ApproxHistogram hist = approx_histogram(dist, tau);
  int best = 0;
  for (int j = 1; j <= hist.bucketing.num_buckets_L(); ++j) {
    if (hist.masses[static_cast<std::size_t>(j)] >
        hist.masses[static_cast<std::size_t>(best)]) {
      best = j;
    }
  }
  Element y = find_heavy_representative(dist, hist.bucketing, best);
  int tag = std::clamp(best + tag_offset, 0, hist.bucketing.num_buckets_L());
  return PointMassClaim{y, tag};
}

class BufferedTranscript final : public TranscriptSink {
 public:
  BufferedTranscript(std::uint64_t run_id, std::string phase)
      : run_id_(run_id), phase_(std::move(phase)) {}

  void record_samp(Element result) override {
    Json j;
    j["run_id"] = run_id_;
    j["phase"] = phase_;
    j["op"] = "samp";
    j["args"] = Json::array();
    j["result"] = result;
    lines_.push_back(j.dump());
  }
  void record_pcond(Element x, Element y, PcondResult result) override {
    Json j;
    j["run_id"] = run_id_;
    j["phase"] = phase_;
    j["op"] = "pcond";
    j["args"] = Json::array({x, y});
    if (result.has_value()) {
      j["result"] = *result;
    } else {
      j["result"] = "FAIL";
    }
    lines_.push_back(j.dump());
  }

  std::vector<std::string> take() { return std::move(lines_); }

 private:
  std::uint64_t run_id_;
  std::string phase_;
  std::vector<std::string> lines_;
};

bool transcripts_enabled() {
  const char* v = std::getenv("PCV_LOG_TRANSCRIPTS");
  return v != nullptr && std::string(v) == "1";
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  ExperimentConfig c;
  c.protocol = j.at("protocol").get<std::string>();
  c.domain_n = j.at("domain_n").get<std::uint64_t>();
  c.fixture = j.value("fixture", Json::object());
  c.prover = j.value("prover", Json::object());
  c.params = j.value("params", Json::object());
  c.profile = j.contains("profile") ? profile_from_json(j.at("profile")) : ConstantsProfile::paper();
  c.runs = j.value("runs", std::uint64_t{1});
  c.base_seed = j.value("base_seed", std::uint64_t{0});
  c.jobs = j.value("jobs", 1);
  c.out_dir = j.value("out_dir", std::string());
  return c;
}

Json ExperimentConfig::to_json() const {
  Json j;
  j["protocol"] = protocol;
  j["domain_n"] = domain_n;
  j["fixture"] = fixture;
  j["prover"] = prover;
  j["params"] = params;
  j["profile"] = profile_to_json(profile);
  j["runs"] = runs;
  j["base_seed"] = base_seed;
  j["jobs"] = jobs;
  if (!out_dir.empty()) j["out_dir"] = out_dir;
  return j;
}

bool outcome_is_accept(const std::string& protocol, const std::string& outcome) {
  if (protocol == "compare") return outcome == "estimate";
  if (protocol == "isinsupport") return outcome == "yes";
  if (protocol == "estimate-neighborhood") return outcome == "estimate";
  if (protocol == "sampler") return outcome == "sample";
  if (protocol == "lowerbound") return outcome == "clean";
  return outcome == "accept";
}

void validate_config(const ExperimentConfig& config) {
  if (config.runs == 0) throw std::invalid_argument("config: runs must be >= 1");
  if (config.domain_n < 2 && config.protocol != "lowerbound") {
    throw std::invalid_argument("config: domain_n must be >= 2");
  }
  const Json& p = config.params;
  const std::string& proto = config.protocol;

  if (proto == "lowerbound") {
    double c_prime = p.value("c_prime", 0.125);
    double budget = c_prime * std::cbrt(static_cast<double>(config.domain_n));
    if (p.at("m").get<double>() > budget || p.at("k").get<double>() > budget) {
      throw std::invalid_argument("lowerbound: m, k must be <= c_prime * n^{1/3}");
    }
    return;
  }

  // Fixture must be loadable/generable.
  Distribution dist = build_fixture(config, 0);
  (void)adversary_from_json(config.prover);

  if (proto == "compare") {
    compare_query_count(p.value("K", 2.0), p.at("gamma").get<double>(),
                        p.at("beta").get<double>());
  } else if (proto == "isinsupport") {
    is_in_support_trials(p.at("beta").get<double>());
  } else if (proto == "estimate-neighborhood" || proto == "sampler") {
    EstimateNeighborhoodParams::derive(p.at("kappa").get<double>(), p.at("beta").get<double>(),
                                       p.at("eta").get<double>(), p.at("delta").get<double>(),
                                       config.profile);
  } else if (proto == "test1" || proto == "test2" || proto == "support-large") {
    SupportContext ctx = claim_from_json(p.at("claim"), config.domain_n);
    double delta = p.value("delta", 0.1);
    amplifier_profile_test1(config.domain_n, ctx.a_lo, ctx.a_lo_strict, delta, config.profile);
    amplifier_profile_test2(config.domain_n, ctx.b_hi, ctx.b_hi_strict, p.value("alpha", 0.0),
                            delta, config.profile);
  } else if (proto == "support-small") {
    claim_from_json(p.at("claim"), config.domain_n);
  } else if (proto == "approx-single") {
    ApproxSingleParams::derive(config.domain_n, p.at("tau").get<double>(),
                               p.at("delta_prime").get<double>(), config.profile);
  } else if (proto == "histogram") {
    HistogramSession::derive(config.domain_n, p.at("tau_prime").get<double>(), config.profile);
  } else {
    throw std::invalid_argument("unknown protocol: " + proto);
  }
}

RunRecord execute_run(const ExperimentConfig& config, std::uint64_t run_id) {
  RunRecord record;
  record.run_id = run_id;
  const Json& p = config.params;

  if (config.protocol == "lowerbound") {
    RngStream rng(config.base_seed, run_id);
    bool violated = lower_bound_trial(config.domain_n, p.at("m").get<std::uint64_t>(),
                                      p.at("k").get<std::uint64_t>(), p.value("k_const", 2.0),
                                      rng);
    record.outcome = violated ? "violation" : "clean";
    record.stats.samples_drawn = p.at("k").get<std::uint64_t>();
    record.stats.pcond_queries = p.at("m").get<std::uint64_t>();
    return record;
  }

  RngStream run_stream(config.base_seed, run_id);
  Distribution dist = build_fixture(config, run_id);
  InstrumentedOracle oracle(dist, run_stream.substream(kOraclePhase));
  RngStream verifier_rng = run_stream.substream(kVerifierPhase);
  auto prover =
      make_prover(adversary_from_json(config.prover), dist, run_stream.substream(kProverPhase));

  std::optional<BufferedTranscript> transcript;
  if (transcripts_enabled()) {
    transcript.emplace(run_id, config.protocol);
    oracle.set_transcript(&*transcript);
  }

  const std::string& proto = config.protocol;
  if (proto == "compare") {
    Element x = p.at("x").get<Element>();
    Element y = p.at("y").get<Element>();
    double gamma = p.at("gamma").get<double>();
    double beta = p.at("beta").get<double>();
    double K = p.value("K", 2.0);
    CompareOutcome out = compare(oracle, x, y, gamma, beta, K);
    switch (out.kind) {
      case CompareOutcome::Kind::High: record.outcome = "high"; break;
      case CompareOutcome::Kind::Low: record.outcome = "low"; break;
      case CompareOutcome::Kind::Estimate: record.outcome = "estimate"; break;
      case CompareOutcome::Kind::Fail: record.outcome = "fail"; break;
    }
    record.aux["queries"] = compare_query_count(K, gamma, beta);
    if (out.is_estimate()) record.aux["alpha"] = out.alpha;
  } else if (proto == "isinsupport") {
    SupportCheckResult out = is_in_support(oracle, p.at("x_ref").get<Element>(),
                                           p.at("y").get<Element>(), p.at("beta").get<double>());
    record.outcome = out.answer == SupportAnswer::Yes   ? "yes"
                     : out.answer == SupportAnswer::No ? "no"
                                                       : "fail";
    record.aux["queries"] = out.queries_used;
  } else if (proto == "estimate-neighborhood") {
    NeighborhoodEstimate est = estimate_neighborhood(
        oracle, p.at("x").get<Element>(), p.at("kappa").get<double>(), p.at("beta").get<double>(),
        p.at("eta").get<double>(), p.at("delta").get<double>(), config.profile, verifier_rng);
    record.outcome = "estimate";
    record.aux["w_hat"] = est.w_hat;
    record.aux["t"] = est.t;
    record.aux["rings_T"] = est.T;
    record.aux["alpha_t"] = est.alpha_t;
  } else if (proto == "sampler") {
    std::optional<NeighborhoodClassifier> classifier;
    NeighborhoodEstimate est = estimate_neighborhood(
        oracle, p.at("x").get<Element>(), p.at("kappa").get<double>(), p.at("beta").get<double>(),
        p.at("eta").get<double>(), p.at("delta").get<double>(), config.profile, verifier_rng,
        classifier);
    NeighborhoodSamplerParams sp = NeighborhoodSamplerParams::derive(
        p.at("beta").get<double>(), p.at("eta").get<double>(), config.profile);
    NeighborhoodSampleResult out =
        sample_from_neighborhood(oracle, *classifier, sp, verifier_rng);
    record.outcome = out.element.has_value() ? "sample" : "bottom";
    if (out.element.has_value()) record.aux["element"] = *out.element;
    record.aux["w_hat"] = est.w_hat;
    record.aux["alpha_t"] = est.alpha_t;
  } else if (proto == "test1") {
    SupportContext ctx = claim_from_json(p.at("claim"), config.domain_n);
    Element x_ref = oracle.samp();
    RunResult out = test1_large(oracle, *prover, x_ref, ctx, verifier_rng);
    record.outcome = out.decision == Decision::Accept ? "accept" : "reject";
  } else if (proto == "test2") {
    SupportContext ctx = claim_from_json(p.at("claim"), config.domain_n);
    RunResult out = test2_large(oracle, *prover, ctx, verifier_rng);
    record.outcome = out.decision == Decision::Accept ? "accept" : "reject";
  } else if (proto == "support-large") {
    SupportContext ctx = claim_from_json(p.at("claim"), config.domain_n);
    AmplifiedResult out =
        verify_support_large(oracle, *prover, ctx, p.value("alpha", 0.0),
                             p.value("delta", 0.1), config.profile, verifier_rng);
    record.outcome = out.decision == Decision::Accept ? "accept" : "reject";
    record.aux["test1_rejects"] = out.test1_rejects;
    record.aux["test1_trials"] = out.test1_trials;
    record.aux["test2_rejects"] = out.test2_rejects;
    record.aux["test2_trials"] = out.test2_trials;
  } else if (proto == "support-small") {
    SupportContext ctx = claim_from_json(p.at("claim"), config.domain_n);
    SmallSupportResult out = verify_support_small(
        oracle, *prover, ctx, p.value("alpha", 0.0), p.value("delta_c", 0.05),
        p.value("delta_s", 0.05), config.profile, verifier_rng);
    record.outcome = out.decision == Decision::Accept ? "accept" : "reject";
    if (!out.reject_reason.empty()) record.aux["reason"] = out.reject_reason;
  } else if (proto == "approx-single") {
    double tau = p.at("tau").get<double>();
    PointMassClaim claim{};
    if (p.contains("y_star")) {
      claim.y_star = p.at("y_star").get<Element>();
      claim.j_star = p.at("j_star").get<int>();
    } else {
      claim = auto_claim(dist, tau, p.value("tag_offset", 0));
    }
    ApproxSingleResult out = approximate_single(oracle, *prover, claim, tau,
                                                p.at("delta_prime").get<double>(),
                                                config.profile, verifier_rng);
    record.outcome = out.decision == Decision::Accept ? "accept" : "reject";
    record.aux["y_star"] = claim.y_star;
    record.aux["j_star"] = claim.j_star;
    record.aux["w_hat"] = out.estimate.w_hat;
    record.aux["used_large"] = out.used_large_protocol;
    record.aux["bounds"] = bounds_to_json(out.bounds);
    record.aux["declared"] = stats_to_json(out.declared);
    if (out.decision == Decision::Accept) {
      record.aux["certified_mass"] = out.certified_mass;
    } else {
      record.aux["reason"] = out.reject_reason;
    }
  } else if (proto == "histogram") {
    HistogramResult out = verify_histogram(oracle, *prover, p.at("tau_prime").get<double>(),
                                           config.profile, verifier_rng);
    record.outcome = out.decision == Decision::Accept ? "accept" : "reject";
    record.aux["tau"] = out.session.tau;
    record.aux["samples_s"] = out.session.samples_s;
    record.aux["declared"] = stats_to_json(out.declared);
    if (out.decision == Decision::Accept) {
      Json learned = Json::object();
      const auto& masses = out.learned->masses;
      for (std::size_t j = 0; j < masses.size(); ++j) {
        if (masses[j] > 0.0) learned[std::to_string(j)] = masses[j];
      }
      record.aux["learned_histogram"] = learned;
      ApproxHistogram truth = approx_histogram(dist, out.session.tau);
      double l1 = 0.0;
      for (std::size_t j = 0; j < masses.size(); ++j) {
        l1 += std::abs(masses[j] - truth.masses[j]);
      }
      // Bucket-mass transport: upper surrogate for the relabelling distance
      // of the best realizations, up to one bucket width of discretization.
      record.aux["rl_to_truth"] = 0.5 * l1;
      if (p.contains("property")) {
        const Json& prop = p.at("property");
        PropertyDistance fn =
            prop.at("kind") == "support-range"
                ? support_size_range_distance(prop.at("s_min").get<std::uint64_t>(),
                                              prop.at("s_max").get<std::uint64_t>())
                : uniformity_over_support_distance();
        Decision d = decide_label_invariant(*out.learned, fn, prop.at("tau_c").get<double>(),
                                            prop.at("tau_f").get<double>());
        record.aux["property_decision"] = d == Decision::Accept ? "accept" : "reject";
      }
    } else {
      record.aux["reason"] = out.reject_reason;
    }
    record.aux["consistency_sum"] = out.consistency_sum;
  } else {
    throw std::invalid_argument("unknown protocol: " + proto);
  }

  record.stats = oracle.stats();
  if (transcript) {
    Json lines = Json::array();
    for (auto& l : transcript->take()) lines.push_back(Json::parse(l));
    record.aux["transcript"] = lines;
  }
  return record;
}

ExperimentReport run_experiment(const ExperimentConfig& config,
                                std::vector<RunRecord>* records_out) {
  validate_config(config);
  std::vector<RunRecord> records(config.runs);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (std::uint64_t id = next.fetch_add(1); id < config.runs; id = next.fetch_add(1)) {
      records[id] = execute_run(config, id);
    }
  };
  int jobs = std::max(1, config.jobs);
  if (jobs == 1 || config.runs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentReport report = summarize(records, "accept");
  // Re-map accepts for protocols with non-accept/reject outcomes.
  report.accepts = 0;
  for (const auto& r : records) {
    report.accepts += outcome_is_accept(config.protocol, r.outcome);
  }
  report.rejects = report.runs - report.accepts;
  report.accept_rate = static_cast<double>(report.accepts) / static_cast<double>(report.runs);
  report.accept_ci = wilson_interval(report.accepts, report.runs);

  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    std::ofstream jsonl(std::filesystem::path(config.out_dir) / "runs.jsonl");
    for (const auto& r : records) jsonl << record_to_json(config, r).dump() << "\n";
    std::ofstream csv(std::filesystem::path(config.out_dir) / "summary.csv");
    csv << summary_csv_header() << "\n" << summary_csv_row(config, report) << "\n";
  }
  if (records_out) *records_out = std::move(records);
  return report;
}

ExperimentReport summarize(const std::vector<RunRecord>& records,
                           const std::string& accept_outcome) {
  ExperimentReport rep;
  rep.runs = records.size();
  if (records.empty()) return rep;
  for (const auto& r : records) {
    rep.accepts += (r.outcome == accept_outcome);
    rep.mean_samples += static_cast<double>(r.stats.samples_drawn);
    rep.max_samples = std::max(rep.max_samples, static_cast<double>(r.stats.samples_drawn));
    rep.mean_pcond += static_cast<double>(r.stats.pcond_queries);
    rep.max_pcond = std::max(rep.max_pcond, static_cast<double>(r.stats.pcond_queries));
    rep.mean_bits_to_prover += static_cast<double>(r.stats.bits_sent_to_prover);
    rep.mean_bits_to_verifier += static_cast<double>(r.stats.bits_sent_to_verifier);
    rep.mean_rounds += static_cast<double>(r.stats.rounds);
    rep.max_rounds = std::max(rep.max_rounds, static_cast<double>(r.stats.rounds));
  }
  rep.rejects = rep.runs - rep.accepts;
  auto n = static_cast<double>(rep.runs);
  rep.mean_samples /= n;
  rep.mean_pcond /= n;
  rep.mean_bits_to_prover /= n;
  rep.mean_bits_to_verifier /= n;
  rep.mean_rounds /= n;
  rep.accept_rate = static_cast<double>(rep.accepts) / n;
  rep.accept_ci = wilson_interval(rep.accepts, rep.runs);
  return rep;
}

Json record_to_json(const ExperimentConfig& config, const RunRecord& record) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["run_id"] = record.run_id;
  j["base_seed"] = config.base_seed;
  j["protocol"] = config.protocol;
  j["outcome"] = record.outcome;
  j["stats"] = stats_to_json(record.stats);
  j["aux"] = record.aux;
  // The output directory is not part of the run's identity.
  Json cfg = config.to_json();
  cfg.erase("out_dir");
  j["config"] = cfg;
  return j;
}

ReplayOutcome replay_record(const std::string& jsonl_line) {
  Json original = Json::parse(jsonl_line);
  ExperimentConfig config = ExperimentConfig::from_json(original.at("config"));
  std::uint64_t run_id = original.at("run_id").get<std::uint64_t>();
  RunRecord fresh = execute_run(config, run_id);
  ReplayOutcome out;
  out.original_line = original.dump();
  out.fresh_line = record_to_json(config, fresh).dump();
  out.identical = out.original_line == out.fresh_line;
  return out;
}

std::string summary_csv_header() {
  return "schema,protocol,prover,runs,accepts,rejects,accept_rate,ci_lo,ci_hi,"
         "mean_samples,max_samples,mean_pcond,max_pcond,mean_bits_to_prover,"
         "mean_bits_to_verifier,mean_rounds,max_rounds";
}

std::string summary_csv_row(const ExperimentConfig& config, const ExperimentReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << kSchemaVersion << ',' << config.protocol << ','
     << (config.prover.is_object() ? config.prover.value("kind", std::string("honest"))
                                : std::string("honest")) << ',' << r.runs << ',' << r.accepts
     << ',' << r.rejects << ',' << r.accept_rate << ',' << r.accept_ci.lo << ','
     << r.accept_ci.hi << ',' << r.mean_samples << ',' << r.max_samples << ',' << r.mean_pcond
     << ',' << r.max_pcond << ',' << r.mean_bits_to_prover << ',' << r.mean_bits_to_verifier
     << ',' << r.mean_rounds << ',' << r.max_rounds;
  return os.str();
}

}  // namespace pcv
