// Command-line front end: batch experiment runner, single sub-protocol runs,
// the lower-bound simulation, record replay, and fixture management.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pcv/bucketing.hpp"
#include "pcv/fixtures.hpp"
#include "pcv/harness.hpp"
#include "pcv/json_io.hpp"
#include "pcv/lower_bound.hpp"

namespace {

using pcv::Json;

int print_report(const pcv::ExperimentConfig& config, const pcv::ExperimentReport& report) {
  Json out;
  out["protocol"] = config.protocol;
  out["runs"] = report.runs;
  out["accepts"] = report.accepts;
  out["rejects"] = report.rejects;
  out["accept_rate"] = report.accept_rate;
  out["accept_ci"] = Json::array({report.accept_ci.lo, report.accept_ci.hi});
  out["mean_samples"] = report.mean_samples;
  out["mean_pcond"] = report.mean_pcond;
  out["mean_bits_to_prover"] = report.mean_bits_to_prover;
  out["mean_bits_to_verifier"] = report.mean_bits_to_verifier;
  out["mean_rounds"] = report.mean_rounds;
  std::cout << out.dump(2) << "\n";
  return 0;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return Json::parse(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcv: interactive verification of label-invariant distribution "
               "properties under pairwise conditional sampling"};
  app.require_subcommand(1);

  std::string config_path;
  std::string profile_name = "paper";
  std::string out_dir;
  std::uint64_t seed = 0;
  std::uint64_t runs = 0;
  int jobs = 1;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON experiment config");
    cmd->add_option("--seed", seed, "base seed");
    cmd->add_option("--runs", runs, "number of runs");
    cmd->add_option("--jobs", jobs, "worker threads");
    cmd->add_option("--out", out_dir, "output directory (runs.jsonl, summary.csv)");
    cmd->add_option("--profile", profile_name, "paper | relaxed-default | custom");
  };

  // run: full experiment from a JSON config.
  auto* run_cmd = app.add_subcommand("run", "run an experiment described by a JSON config");
  add_common(run_cmd);

  // subprotocol: one named protocol with inline parameters.
  auto* sub_cmd = app.add_subcommand("subprotocol", "run a single sub-protocol experiment");
  std::string sub_name;
  std::string params_inline = "{}";
  std::string fixture_inline;
  std::string prover_inline = R"({"kind":"honest"})";
  std::uint64_t domain_n = 0;
  sub_cmd->add_option("name", sub_name,
                      "compare|isinsupport|estimate-neighborhood|support-small|"
                      "support-large|approx-single|histogram")
      ->required();
  sub_cmd->add_option("--params", params_inline, "protocol parameters (JSON)");
  sub_cmd->add_option("--fixture", fixture_inline, "fixture spec (JSON)");
  sub_cmd->add_option("--prover", prover_inline, "prover spec (JSON)");
  sub_cmd->add_option("--n", domain_n, "domain size");
  add_common(sub_cmd);

  // lowerbound
  auto* lb_cmd = app.add_subcommand("lowerbound", "sample-only simulation disagreement rate");
  std::uint64_t lb_n = 1000000, lb_m = 10, lb_k = 10, lb_trials = 10000;
  double lb_kconst = 2.0, lb_cprime = 0.125;
  lb_cmd->add_option("--n", lb_n, "domain size");
  lb_cmd->add_option("--m", lb_m, "pairwise queries per trial");
  lb_cmd->add_option("--k", lb_k, "upfront samples per trial");
  lb_cmd->add_option("--trials", lb_trials, "number of trials");
  lb_cmd->add_option("--k-const", lb_kconst, "support shrink factor of the yes-instances");
  lb_cmd->add_option("--c-prime", lb_cprime, "budget constant: m, k <= c' n^{1/3}");
  lb_cmd->add_option("--seed", seed, "base seed");
  lb_cmd->add_option("--jobs", jobs, "worker threads");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "re-execute a run record bit-identically");
  std::string record_path;
  std::uint64_t record_line = 1;
  replay_cmd->add_option("record", record_path, "path to a runs.jsonl file")->required();
  replay_cmd->add_option("--line", record_line, "1-based line number")->capture_default_str();

  // fixtures
  auto* fx_cmd = app.add_subcommand("fixtures", "generate or inspect distribution fixtures");
  auto* fx_gen = fx_cmd->add_subcommand("generate", "write a fixture as JSON");
  std::string fx_name = "flat", fx_params = "{}", fx_out;
  std::uint64_t fx_n = 100;
  fx_gen->add_option("--name", fx_name, "generator name")->required();
  fx_gen->add_option("--params", fx_params, "generator parameters (JSON)");
  fx_gen->add_option("--n", fx_n, "domain size")->required();
  fx_gen->add_option("--seed", seed, "seed");
  fx_gen->add_option("--out", fx_out, "output path")->required();
  auto* fx_inspect = fx_cmd->add_subcommand("inspect", "summarize a fixture file");
  std::string fx_in;
  double fx_tau = 0.1;
  fx_inspect->add_option("file", fx_in, "fixture JSON path")->required();
  fx_inspect->add_option("--tau", fx_tau, "bucketing resolution for the histogram summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed() || sub_cmd->parsed()) {
      pcv::ExperimentConfig config;
      if (!config_path.empty()) {
        config = pcv::ExperimentConfig::from_json(load_json_file(config_path));
      }
      if (sub_cmd->parsed()) {
        config.protocol = sub_name;
        config.params = Json::parse(params_inline);
        if (!fixture_inline.empty()) config.fixture = Json::parse(fixture_inline);
        config.prover = Json::parse(prover_inline);
        if (domain_n) config.domain_n = domain_n;
      }
      if (profile_name == "custom") {
        // profile comes from the config file
      } else if (sub_cmd->parsed() || run_cmd->count("--profile")) {
        config.profile = pcv::profile_by_name(profile_name);
      }
      if (runs) config.runs = runs;
      if (seed) config.base_seed = seed;
      if (jobs) config.jobs = jobs;
      if (!out_dir.empty()) config.out_dir = out_dir;
      pcv::ExperimentReport report = pcv::run_experiment(config);
      return print_report(config, report);
    }

    if (lb_cmd->parsed()) {
      pcv::LowerBoundCell cell =
          pcv::lower_bound_experiment(lb_n, lb_m, lb_k, lb_trials, lb_kconst, lb_cprime, seed,
                                      jobs);
      Json out;
      out["n"] = lb_n;
      out["m"] = lb_m;
      out["k"] = lb_k;
      out["trials"] = cell.trials;
      out["violations"] = cell.violations;
      out["violation_rate"] = cell.violation_rate;
      out["bound_4m_cbrt_n"] = cell.bound;
      std::cout << out.dump(2) << "\n";
      return cell.violation_rate <= cell.bound ? 0 : 1;
    }

    if (replay_cmd->parsed()) {
      std::ifstream in(record_path);
      if (!in) throw std::runtime_error("cannot open: " + record_path);
      std::string line;
      for (std::uint64_t i = 0; i < record_line; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("record line out of range");
      }
      pcv::ReplayOutcome outcome = pcv::replay_record(line);
      std::cout << (outcome.identical ? "replay: identical" : "replay: MISMATCH") << "\n";
      if (!outcome.identical) {
        std::cout << "original: " << outcome.original_line << "\n"
                  << "fresh:    " << outcome.fresh_line << "\n";
      }
      return outcome.identical ? 0 : 1;
    }

    if (fx_gen->parsed()) {
      pcv::Distribution dist = pcv::generate_fixture(fx_name, Json::parse(fx_params), fx_n,
                                                     pcv::RngStream(seed, 0));
      pcv::save_distribution(dist, fx_out);
      std::cout << "wrote " << fx_out << "\n";
      return 0;
    }
    if (fx_inspect->parsed()) {
      pcv::Distribution dist = pcv::load_distribution(fx_in);
      Json out;
      out["n"] = dist.n();
      out["support_size"] = dist.support_size();
      out["flatness_ratio"] = dist.flatness_ratio();
      pcv::ApproxHistogram hist = pcv::approx_histogram(dist, fx_tau);
      Json buckets = Json::object();
      for (std::size_t j = 0; j < hist.masses.size(); ++j) {
        if (hist.masses[j] > 0.0) buckets[std::to_string(j)] = hist.masses[j];
      }
      out["tau"] = fx_tau;
      out["histogram"] = buckets;
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
