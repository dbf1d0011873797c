#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcv/distribution.hpp"
#include "pcv/json_io.hpp"
#include "pcv/rng.hpp"

namespace pcv {

/// Named distribution generators:
///   flat            {"support": k, "random_support": bool=false}
///   kappa_flat      {"support": k, "kappa": kappa, "random_support": bool}
///   two_level       {"sizes": [k1, k2], "ratio": r}   heavy level first
///   zipf            {"exponent": a}
///   hard_yes        {"k_const": K}   flat on round(n^{2/3}/K) random support
///   hard_no         {}               flat on round(n^{2/3}) random support
Distribution generate_fixture(const std::string& name, const Json& params, std::uint64_t n,
                              RngStream rng);

/// k distinct elements of [0, n) (Floyd's sampling), sorted.
std::vector<Element> sample_distinct(std::uint64_t n, std::uint64_t k, RngStream& rng);

}  // namespace pcv
