#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcv/json_io.hpp"
#include "pcv/oracle.hpp"
#include "pcv/profile.hpp"
#include "pcv/stats_util.hpp"

namespace pcv {

/// One batch experiment: R independent runs of a protocol against a fixture
/// and a prover, each run seeded by (base_seed, run_id).
struct ExperimentConfig {
  std::string protocol;  // compare | isinsupport | estimate-neighborhood | sampler |
                         // test1 | test2 | support-large | support-small |
                         // approx-single | histogram | lowerbound
  std::uint64_t domain_n = 0;
  Json fixture = Json::object();  // {"generator", "params", "per_run"} or {"file": path}
  Json prover = Json::object();   // {"kind", "offset", "factor", "target_bucket"}
  Json params = Json::object();   // protocol-specific parameters
  ConstantsProfile profile;
  std::uint64_t runs = 1;
  std::uint64_t base_seed = 0;
  int jobs = 1;
  std::string out_dir;  // empty = no files written

  static ExperimentConfig from_json(const Json& j);
  Json to_json() const;
};

struct RunRecord {
  std::uint64_t run_id = 0;
  std::string outcome;  // accept | reject | yes | no | ... per protocol
  OracleStats stats;
  Json aux;
};

struct ExperimentReport {
  std::uint64_t runs = 0;
  std::uint64_t accepts = 0;
  std::uint64_t rejects = 0;
  double accept_rate = 0.0;
  BinomialCi accept_ci{0.0, 0.0};
  double mean_samples = 0.0, max_samples = 0.0;
  double mean_pcond = 0.0, max_pcond = 0.0;
  double mean_bits_to_prover = 0.0, mean_bits_to_verifier = 0.0;
  double mean_rounds = 0.0, max_rounds = 0.0;
};

/// Throws std::invalid_argument before any run when the configuration or
/// protocol parameters are unusable.
void validate_config(const ExperimentConfig& config);

RunRecord execute_run(const ExperimentConfig& config, std::uint64_t run_id);

/// Runs the batch across a worker pool of config.jobs threads; records come
/// back in run-id order. When out_dir is set, writes runs.jsonl and
/// summary.csv there.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                std::vector<RunRecord>* records_out = nullptr);

/// Self-contained JSONL line for one run (embeds the resolved config).
Json record_to_json(const ExperimentConfig& config, const RunRecord& record);

struct ReplayOutcome {
  bool identical = false;
  std::string fresh_line;
  std::string original_line;
};

/// Re-executes the run described by a record line and compares byte-for-byte.
ReplayOutcome replay_record(const std::string& jsonl_line);

ExperimentReport summarize(const std::vector<RunRecord>& records,
                           const std::string& accept_outcome = "accept");

std::string summary_csv_header();
std::string summary_csv_row(const ExperimentConfig& config, const ExperimentReport& report);

/// Whether the given outcome string counts as an accept for its protocol.
bool outcome_is_accept(const std::string& protocol, const std::string& outcome);

}  // namespace pcv
