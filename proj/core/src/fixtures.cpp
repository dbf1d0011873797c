#include "pcv/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace pcv {

std::vector<Element> sample_distinct(std::uint64_t n, std::uint64_t k, RngStream& rng) {
  if (k > n) throw std::invalid_argument("sample_distinct: k > n");
  std::unordered_set<Element> chosen;
  chosen.reserve(static_cast<std::size_t>(k) * 2);
  for (std::uint64_t j = n - k; j < n; ++j) {
    auto t = static_cast<Element>(rng.next_below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(static_cast<Element>(j));
  }
  std::vector<Element> out(chosen.begin(), chosen.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

Distribution on_support(std::uint64_t n, const std::vector<Element>& support,
                        const std::vector<double>& weights) {
  double total = stable_sum(weights);
  std::vector<double> probs(n, 0.0);
  for (std::size_t i = 0; i < support.size(); ++i) {
    probs[support[i]] = weights[i] / total;
  }
  // Pin the mass sum exactly: dump any residual into the heaviest entry.
  double sum = stable_sum(probs);
  if (sum != 1.0) {
    auto it = std::max_element(probs.begin(), probs.end());
    *it += 1.0 - sum;
  }
  return Distribution(std::move(probs));
}

std::vector<Element> pick_support(std::uint64_t n, std::uint64_t k, bool random, RngStream& rng) {
  if (random) return sample_distinct(n, k, rng);
  std::vector<Element> s(k);
  for (std::uint64_t i = 0; i < k; ++i) s[i] = static_cast<Element>(i);
  return s;
}

}  // namespace

Distribution generate_fixture(const std::string& name, const Json& params, std::uint64_t n,
                              RngStream rng) {
  if (n < 2) throw std::invalid_argument("generate_fixture: n must be >= 2");

  if (name == "flat") {
    auto k = params.at("support").get<std::uint64_t>();
    if (k == 0 || k > n) throw std::invalid_argument("flat: bad support size");
    auto support = pick_support(n, k, params.value("random_support", false), rng);
    return on_support(n, support, std::vector<double>(k, 1.0));
  }

  if (name == "kappa_flat") {
    auto k = params.at("support").get<std::uint64_t>();
    double kappa = params.at("kappa").get<double>();
    if (k == 0 || k > n) throw std::invalid_argument("kappa_flat: bad support size");
    if (!(kappa >= 1.0)) throw std::invalid_argument("kappa_flat: kappa must be >= 1");
    auto support = pick_support(n, k, params.value("random_support", false), rng);
    std::vector<double> w(k);
    for (std::uint64_t i = 0; i < k; ++i) {
      double frac = k == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(k - 1);
      w[i] = std::pow(kappa, frac);  // spans [1, kappa] exactly
    }
    return on_support(n, support, w);
  }

  if (name == "two_level") {
    auto sizes = params.at("sizes").get<std::vector<std::uint64_t>>();
    double ratio = params.at("ratio").get<double>();
    if (sizes.size() != 2 || sizes[0] + sizes[1] > n || sizes[0] == 0 || sizes[1] == 0) {
      throw std::invalid_argument("two_level: bad sizes");
    }
    if (!(ratio >= 1.0)) throw std::invalid_argument("two_level: ratio must be >= 1");
    std::vector<Element> support(sizes[0] + sizes[1]);
    for (std::size_t i = 0; i < support.size(); ++i) support[i] = static_cast<Element>(i);
    std::vector<double> w(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) w[i] = i < sizes[0] ? ratio : 1.0;
    return on_support(n, support, w);
  }

  if (name == "zipf") {
    double a = params.at("exponent").get<double>();
    if (!(a >= 0.0)) throw std::invalid_argument("zipf: exponent must be >= 0");
    std::vector<Element> support(n);
    std::vector<double> w(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      support[i] = static_cast<Element>(i);
      w[i] = std::pow(static_cast<double>(i + 1), -a);
    }
    return on_support(n, support, w);
  }

  if (name == "hard_yes" || name == "hard_no") {
    double k_const = name == "hard_yes" ? params.at("k_const").get<double>() : 1.0;
    if (!(k_const >= 1.0)) throw std::invalid_argument("hard_yes: k_const must be >= 1");
    auto k = static_cast<std::uint64_t>(
        std::llround(std::pow(static_cast<double>(n), 2.0 / 3.0) / k_const));
    k = std::max<std::uint64_t>(1, std::min(k, n));
    auto support = sample_distinct(n, k, rng);
    return on_support(n, support, std::vector<double>(k, 1.0));
  }

  throw std::invalid_argument("unknown fixture generator: " + name);
}

}  // namespace pcv
