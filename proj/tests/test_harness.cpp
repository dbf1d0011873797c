#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "pcv/fixtures.hpp"
#include "pcv/harness.hpp"
#include "pcv/lower_bound.hpp"

using namespace pcv;

namespace {

ExperimentConfig isinsupport_config() {
  ExperimentConfig c;
  c.protocol = "isinsupport";
  c.domain_n = 1000;
  c.fixture = Json{{"generator", "flat"}, {"params", Json{{"support", 200}}}};
  c.params = Json{{"x_ref", 0}, {"y", 5}, {"beta", 0.1}};
  c.runs = 100;
  c.base_seed = 42;
  c.jobs = 2;
  return c;
}

}  // namespace

TEST_CASE("fixture generators") {
  SUBCASE("flat(4) on n=8") {
    Json params;
    params["support"] = 4;
    Distribution d = generate_fixture("flat", params, 8, RngStream(1, 0));
    for (int i = 0; i < 4; ++i) CHECK(d[i] == doctest::Approx(0.25));
    for (int i = 4; i < 8; ++i) CHECK(d[i] == 0.0);
  }
  SUBCASE("hard instances have the prescribed support sizes") {
    Distribution no = generate_fixture("hard_no", Json::object(), 10000, RngStream(2, 0));
    CHECK(no.support_size() == 464);  // round(10000^{2/3})
    CHECK(no.flatness_ratio() == doctest::Approx(1.0));
    Json params;
    params["k_const"] = 2.0;
    Distribution yes = generate_fixture("hard_yes", params, 10000, RngStream(2, 1));
    CHECK(yes.support_size() == 232);
    // Random support: two seeds should give different sets.
    Distribution yes2 = generate_fixture("hard_yes", params, 10000, RngStream(3, 1));
    CHECK(yes.probs() != yes2.probs());
  }
  SUBCASE("kappa_flat meets its ratio bound") {
    Json params;
    params["support"] = 10;
    params["kappa"] = 2.0;
    Distribution d = generate_fixture("kappa_flat", params, 100, RngStream(4, 0));
    CHECK(d.flatness_ratio() <= 2.0 + 1e-12);
    CHECK(d.flatness_ratio() == doctest::Approx(2.0));
  }
  SUBCASE("two_level and zipf") {
    Json params;
    params["sizes"] = std::vector<std::uint64_t>{5, 10};
    params["ratio"] = 3.0;
    Distribution d = generate_fixture("two_level", params, 50, RngStream(5, 0));
    CHECK(d[0] == doctest::Approx(3.0 * d[7]));
    Json zp;
    zp["exponent"] = 1.0;
    Distribution z = generate_fixture("zipf", zp, 50, RngStream(5, 1));
    CHECK(z[0] == doctest::Approx(2.0 * z[1]));
  }
  SUBCASE("unknown generator throws") {
    CHECK_THROWS_AS(generate_fixture("nope", Json::object(), 10, RngStream(0, 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("experiment validation surfaces errors before any run") {
  ExperimentConfig c = isinsupport_config();
  c.runs = 0;
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);

  c = isinsupport_config();
  c.params["beta"] = 0.0;
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);

  c = isinsupport_config();
  c.protocol = "bogus";
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("experiment runs and reports") {
  ExperimentConfig c = isinsupport_config();
  std::vector<RunRecord> records;
  ExperimentReport report = run_experiment(c, &records);
  CHECK(report.runs == 100);
  CHECK(report.accepts + report.rejects == report.runs);
  CHECK(report.accept_rate >= 0.9);  // completeness at beta = 0.1 on a flat fixture
  CHECK(records.size() == 100);
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(records[i].run_id == i);
}

TEST_CASE("determinism and replay") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "pcv_harness_test";
  fs::remove_all(dir);

  ExperimentConfig c = isinsupport_config();
  c.out_dir = (dir / "a").string();
  run_experiment(c);
  c.out_dir = (dir / "b").string();
  run_experiment(c);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::string a = slurp(dir / "a" / "runs.jsonl");
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(dir / "b" / "runs.jsonl"));

  SUBCASE("every record replays bit-identically") {
    std::ifstream in(dir / "a" / "runs.jsonl");
    std::string line;
    int checked = 0;
    while (std::getline(in, line) && checked < 10) {
      ReplayOutcome out = replay_record(line);
      CHECK(out.identical);
      ++checked;
    }
    CHECK(checked == 10);
  }

  SUBCASE("summary row is recomputable from the jsonl records") {
    // Rebuild the report purely from the written per-run records.
    std::vector<RunRecord> parsed;
    std::ifstream runs_in(dir / "a" / "runs.jsonl");
    std::string line;
    while (std::getline(runs_in, line)) {
      Json j = Json::parse(line);
      RunRecord r;
      r.run_id = j.at("run_id").get<std::uint64_t>();
      r.outcome = j.at("outcome").get<std::string>();
      r.stats = stats_from_json(j.at("stats"));
      parsed.push_back(std::move(r));
    }
    ExperimentReport recomputed = summarize(parsed, "yes");
    std::ifstream in(dir / "a" / "summary.csv");
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == summary_csv_header());
    c.out_dir = (dir / "a").string();
    CHECK(row == summary_csv_row(c, recomputed));
  }
  fs::remove_all(dir);
}

TEST_CASE("lower bound experiment") {
  SUBCASE("m = 0 never violates") {
    LowerBoundCell cell = lower_bound_experiment(100000, 0, 5, 200, 2.0, 0.125, 7);
    CHECK(cell.violations == 0);
  }
  SUBCASE("rates respect the union bound and grow sublinearly in m") {
    LowerBoundCell m5 = lower_bound_experiment(100000, 5, 5, 2000, 2.0, 0.5, 11, 2);
    LowerBoundCell m10 = lower_bound_experiment(100000, 10, 5, 2000, 2.0, 0.5, 11, 2);
    CHECK(m5.violation_rate <= m5.bound);
    CHECK(m10.violation_rate <= m10.bound);
    double sigma = std::sqrt(m10.violation_rate / 2000.0);
    CHECK(m10.violation_rate <= 2.0 * m5.violation_rate + 4 * sigma);
  }
  SUBCASE("budget precondition") {
    CHECK_THROWS_AS(lower_bound_experiment(1000, 500, 5, 10, 2.0, 0.125, 0),
                    std::invalid_argument);
  }
}

TEST_CASE("transcript logging round-trips") {
  setenv("PCV_LOG_TRANSCRIPTS", "1", 1);
  ExperimentConfig c = isinsupport_config();
  c.runs = 2;
  std::vector<RunRecord> records;
  run_experiment(c, &records);
  unsetenv("PCV_LOG_TRANSCRIPTS");
  REQUIRE(records[0].aux.contains("transcript"));
  const Json& t = records[0].aux.at("transcript");
  CHECK(t.size() == records[0].stats.pcond_queries + records[0].stats.samples_drawn);
  CHECK(t.at(0).at("op") == "pcond");
  CHECK(t.at(0).at("run_id") == 0);
}
