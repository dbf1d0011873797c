#pragma once

#include <string>

#include <json.hpp>

#include "pcv/distribution.hpp"
#include "pcv/oracle.hpp"
#include "pcv/profile.hpp"

namespace pcv {

using Json = nlohmann::ordered_json;

Json distribution_to_json(const Distribution& dist);
Distribution distribution_from_json(const Json& j);

void save_distribution(const Distribution& dist, const std::string& path);
Distribution load_distribution(const std::string& path);

Json stats_to_json(const OracleStats& stats);
OracleStats stats_from_json(const Json& j);

Json profile_to_json(const ConstantsProfile& profile);
ConstantsProfile profile_from_json(const Json& j);

/// Named profile lookup: "paper" or "relaxed-default".
ConstantsProfile profile_by_name(const std::string& name);

}  // namespace pcv
