#include "pcv/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace pcv {

Json distribution_to_json(const Distribution& dist) {
  Json j;
  j["n"] = dist.n();
  j["probs"] = dist.probs();
  return j;
}

Distribution distribution_from_json(const Json& j) {
  auto probs = j.at("probs").get<std::vector<double>>();
  if (j.contains("n") && j.at("n").get<std::uint64_t>() != probs.size()) {
    throw std::invalid_argument("distribution json: n does not match probs length");
  }
  return Distribution(std::move(probs));
}

void save_distribution(const Distribution& dist, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << distribution_to_json(dist).dump() << "\n";
}

Distribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  Json j = Json::parse(in);
  return distribution_from_json(j);
}

Json stats_to_json(const OracleStats& stats) {
  Json j;
  j["samples"] = stats.samples_drawn;
  j["pcond"] = stats.pcond_queries;
  j["bits_to_prover"] = stats.bits_sent_to_prover;
  j["bits_to_verifier"] = stats.bits_sent_to_verifier;
  j["rounds"] = stats.rounds;
  return j;
}

OracleStats stats_from_json(const Json& j) {
  OracleStats s;
  s.samples_drawn = j.at("samples").get<std::uint64_t>();
  s.pcond_queries = j.at("pcond").get<std::uint64_t>();
  s.bits_sent_to_prover = j.at("bits_to_prover").get<std::uint64_t>();
  s.bits_sent_to_verifier = j.at("bits_to_verifier").get<std::uint64_t>();
  s.rounds = j.at("rounds").get<std::uint64_t>();
  return s;
}

Json profile_to_json(const ConstantsProfile& p) {
  Json j;
  j["name"] = p.name;
  j["tau_factor"] = p.tau_factor;
  j["scale_est_rings"] = p.scale_est_rings;
  j["scale_est_samples"] = p.scale_est_samples;
  j["scale_sampler_draws"] = p.scale_sampler_draws;
  j["scale_amp_t1"] = p.scale_amp_t1;
  j["scale_amp_t2"] = p.scale_amp_t2;
  j["scale_hist_samples"] = p.scale_hist_samples;
  j["scale_small_s1"] = p.scale_small_s1;
  j["scale_small_s2"] = p.scale_small_s2;
  j["scale_compare_q"] = p.scale_compare_q;
  j["scale_hist_compare_q"] = p.scale_hist_compare_q;
  j["c_sample"] = p.c_sample;
  j["sampler_retry_budget"] = p.sampler_retry_budget;
  j["tight_sum_threshold"] = p.tight_sum_threshold;
  return j;
}

ConstantsProfile profile_by_name(const std::string& name) {
  if (name == "paper") return ConstantsProfile::paper();
  if (name == "relaxed-default") return ConstantsProfile::relaxed_default();
  throw std::invalid_argument("unknown profile: " + name);
}

ConstantsProfile profile_from_json(const Json& j) {
  if (j.is_string()) return profile_by_name(j.get<std::string>());
  ConstantsProfile p;
  std::string base = j.value("name", std::string("paper"));
  if (base == "paper" || base == "relaxed-default") p = profile_by_name(base);
  p.name = j.value("name", p.name);
  p.tau_factor = j.value("tau_factor", p.tau_factor);
  p.scale_est_rings = j.value("scale_est_rings", p.scale_est_rings);
  p.scale_est_samples = j.value("scale_est_samples", p.scale_est_samples);
  p.scale_sampler_draws = j.value("scale_sampler_draws", p.scale_sampler_draws);
  p.scale_amp_t1 = j.value("scale_amp_t1", p.scale_amp_t1);
  p.scale_amp_t2 = j.value("scale_amp_t2", p.scale_amp_t2);
  p.scale_hist_samples = j.value("scale_hist_samples", p.scale_hist_samples);
  p.scale_small_s1 = j.value("scale_small_s1", p.scale_small_s1);
  p.scale_small_s2 = j.value("scale_small_s2", p.scale_small_s2);
  p.scale_compare_q = j.value("scale_compare_q", p.scale_compare_q);
  p.scale_hist_compare_q = j.value("scale_hist_compare_q", p.scale_hist_compare_q);
  p.c_sample = j.value("c_sample", p.c_sample);
  p.sampler_retry_budget = j.value("sampler_retry_budget", p.sampler_retry_budget);
  p.tight_sum_threshold = j.value("tight_sum_threshold", p.tight_sum_threshold);
  return p;
}

}  // namespace pcv
