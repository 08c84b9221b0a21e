#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "hapmatch/channel.hpp"
#include "hapmatch/geo.hpp"
#include "hapmatch/harness.hpp"
#include "hapmatch/matching.hpp"
#include "hapmatch/scenario.hpp"

namespace hapmatch {

using Json = nlohmann::json;

/// {"seed", "haps": [{id,x,y,alt,capacity}], "uavs": [{id,x,y,alt,served_users}]}
Json scenario_to_json(const Scenario& scenario);
/// Accepts agents in any order; ids must be dense. Throws ConfigError.
Scenario scenario_from_json(const Json& doc);

Json channel_params_to_json(const ChannelParams& params);
/// Missing fields keep their defaults. Throws ConfigError.
ChannelParams channel_params_from_json(const Json& doc);

Json scenario_config_to_json(const ScenarioConfig& config);
ScenarioConfig scenario_config_from_json(const Json& doc);

/// Document with sections "scenario", "channel" and "experiment". The scenario section
/// holds either n_haps/m_uavs for a single point or a "sweep" list; with neither the
/// default sweep applies.
ExperimentConfig experiment_config_from_json(const Json& doc);
Json experiment_config_to_json(const ExperimentConfig& config);

/// A matching plus the channel realisation needed to rebuild the preferences it was
/// computed against.
struct MatchingDocument {
  std::string algorithm;
  std::uint64_t channel_seed = 0;
  double user_weight_db_per_user = 1.0;
  ChannelParams channel;
  Matching matching;
};

Json matching_to_json(const MatchingDocument& doc);
/// Requires the scenario dimensions to size and bounds-check the assignment.
MatchingDocument matching_from_json(const Json& doc, std::size_t n_haps, std::size_t m_uavs);

Json summary_to_json(const ExperimentConfig& config, const ExperimentResult& result);

/// Throws IoError when the file cannot be read, ConfigError when it does not parse.
Json read_json_file(const std::filesystem::path& path);
/// Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace hapmatch
