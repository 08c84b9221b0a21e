#include "hapmatch/serialization.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "hapmatch/errors.hpp"

namespace hapmatch {

namespace {

template <typename T>
T read_field(const Json& obj, const char* key, const T& fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
T require_field(const Json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  return read_field<T>(obj, key, T{});
}

void require_object(const Json& doc, const char* what) {
  if (!doc.is_object()) throw ConfigError(std::string(what) + " must be an object");
}

template <typename T>
Interval<T> read_interval(const Json& obj, const char* key, const Interval<T>& fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_array() || it->size() != 2) throw ConfigError(std::string("field '") + key + "' must be [lo, hi]");
  try {
    return {(*it)[0].get<T>(), (*it)[1].get<T>()};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

template <typename T>
Json interval_json(const Interval<T>& i) {
  return Json::array({i.lo, i.hi});
}

}  // namespace

Json scenario_to_json(const Scenario& scenario) {
  Json haps = Json::array();
  for (const Hap& h : scenario.haps) {
    haps.push_back({{"id", h.id}, {"x", h.pos.x}, {"y", h.pos.y}, {"alt", h.pos.alt}, {"capacity", h.capacity}});
  }
  Json uavs = Json::array();
  for (const Uav& u : scenario.uavs) {
    uavs.push_back(
        {{"id", u.id}, {"x", u.pos.x}, {"y", u.pos.y}, {"alt", u.pos.alt}, {"served_users", u.served_users}});
  }
  return {{"seed", scenario.seed}, {"haps", std::move(haps)}, {"uavs", std::move(uavs)}};
}

Scenario scenario_from_json(const Json& doc) {
  require_object(doc, "scenario document");
  Scenario s;
  s.seed = read_field<std::uint64_t>(doc, "seed", 0);

  const auto haps = doc.find("haps");
  const auto uavs = doc.find("uavs");
  if (haps == doc.end() || !haps->is_array()) throw ConfigError("scenario: 'haps' must be an array");
  if (uavs == doc.end() || !uavs->is_array()) throw ConfigError("scenario: 'uavs' must be an array");

  s.haps.resize(haps->size());
  std::vector<char> seen(haps->size(), 0);
  for (const Json& item : *haps) {
    require_object(item, "HAP entry");
    const auto id = require_field<std::size_t>(item, "id");
    if (id >= seen.size() || seen[id]) throw ConfigError("scenario: HAP ids must be unique and dense from 0");
    seen[id] = 1;
    s.haps[id] = Hap{id,
                     {require_field<double>(item, "x"), require_field<double>(item, "y"),
                      require_field<double>(item, "alt")},
                     read_field<int>(item, "capacity", 5)};
  }

  s.uavs.resize(uavs->size());
  seen.assign(uavs->size(), 0);
  for (const Json& item : *uavs) {
    require_object(item, "UAV entry");
    const auto id = require_field<std::size_t>(item, "id");
    if (id >= seen.size() || seen[id]) throw ConfigError("scenario: UAV ids must be unique and dense from 0");
    seen[id] = 1;
    s.uavs[id] = Uav{id,
                     {require_field<double>(item, "x"), require_field<double>(item, "y"),
                      require_field<double>(item, "alt")},
                     read_field<int>(item, "served_users", 0)};
  }

  try {
    validate(s);
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  return s;
}

Json channel_params_to_json(const ChannelParams& p) {
  return {{"carrier_freq_ghz", p.carrier_freq_ghz},
          {"atmospheric_loss_db", p.atmospheric_loss_db},
          {"scintillation_loss_db", p.scintillation_loss_db},
          {"clutter_loss_db", p.clutter_loss_db},
          {"shadow_fading_variance_db2", p.shadow_fading_variance_db2},
          {"elevation_angle_deg", p.elevation_angle_deg}};
}

ChannelParams channel_params_from_json(const Json& doc) {
  require_object(doc, "channel section");
  const ChannelParams d;
  ChannelParams p;
  p.carrier_freq_ghz = read_field(doc, "carrier_freq_ghz", d.carrier_freq_ghz);
  p.atmospheric_loss_db = read_field(doc, "atmospheric_loss_db", d.atmospheric_loss_db);
  p.scintillation_loss_db = read_field(doc, "scintillation_loss_db", d.scintillation_loss_db);
  p.clutter_loss_db = read_field(doc, "clutter_loss_db", d.clutter_loss_db);
  p.shadow_fading_variance_db2 = read_field(doc, "shadow_fading_variance_db2", d.shadow_fading_variance_db2);
  p.elevation_angle_deg = read_field(doc, "elevation_angle_deg", d.elevation_angle_deg);
  try {
    validate(p);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  return p;
}

Json scenario_config_to_json(const ScenarioConfig& c) {
  return {{"n_haps", c.n_haps},
          {"m_uavs", c.m_uavs},
          {"hap_capacity", c.hap_capacity},
          {"area_side_km", c.area_side_km},
          {"hap_alt_range_km", interval_json(c.hap_alt_range_km)},
          {"uav_alt_range_km", interval_json(c.uav_alt_range_km)},
          {"users_range", interval_json(c.users_range)},
          {"seed", c.seed}};
}

ScenarioConfig scenario_config_from_json(const Json& doc) {
  require_object(doc, "scenario section");
  const ScenarioConfig d;
  ScenarioConfig c;
  c.n_haps = read_field(doc, "n_haps", d.n_haps);
  c.m_uavs = read_field(doc, "m_uavs", d.m_uavs);
  c.hap_capacity = read_field(doc, "hap_capacity", d.hap_capacity);
  c.area_side_km = read_field(doc, "area_side_km", d.area_side_km);
  c.hap_alt_range_km = read_interval(doc, "hap_alt_range_km", d.hap_alt_range_km);
  c.uav_alt_range_km = read_interval(doc, "uav_alt_range_km", d.uav_alt_range_km);
  c.users_range = read_interval(doc, "users_range", d.users_range);
  c.seed = read_field(doc, "seed", d.seed);
  try {
    validate(c);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ExperimentConfig experiment_config_from_json(const Json& doc) {
  require_object(doc, "config document");
  ExperimentConfig config;

  if (const auto it = doc.find("scenario"); it != doc.end()) {
    const Json& section = *it;
    config.scenario = scenario_config_from_json(section);
    if (const auto sweep = section.find("sweep"); sweep != section.end()) {
      if (!sweep->is_array() || sweep->empty()) throw ConfigError("scenario.sweep must be a non-empty array");
      config.sweep.clear();
      for (const Json& point : *sweep) {
        require_object(point, "sweep point");
        config.sweep.push_back({require_field<std::size_t>(point, "n_haps"), require_field<std::size_t>(point, "m_uavs")});
      }
    } else if (section.contains("n_haps") || section.contains("m_uavs")) {
      config.sweep = {{config.scenario.n_haps, config.scenario.m_uavs}};
    }
  }

  if (const auto it = doc.find("channel"); it != doc.end()) config.channel = channel_params_from_json(*it);

  if (const auto it = doc.find("experiment"); it != doc.end()) {
    const Json& e = *it;
    require_object(e, "experiment section");
    config.user_weight_db_per_user = read_field(e, "user_weight_db_per_user", config.user_weight_db_per_user);
    config.trials_per_point = read_field(e, "trials_per_point", config.trials_per_point);
    config.master_seed = read_field(e, "master_seed", config.master_seed);
    config.output_path = read_field(e, "output_path", config.output_path.string());
    config.record_runtime = read_field(e, "record_runtime", config.record_runtime);
    config.threads = read_field(e, "threads", config.threads);
  }

  validate(config);
  return config;
}

Json experiment_config_to_json(const ExperimentConfig& config) {
  Json scenario = scenario_config_to_json(config.scenario);
  scenario.erase("n_haps");
  scenario.erase("m_uavs");
  Json sweep = Json::array();
  for (const auto& p : config.sweep) sweep.push_back({{"n_haps", p.n_haps}, {"m_uavs", p.m_uavs}});
  scenario["sweep"] = std::move(sweep);
  return {{"scenario", std::move(scenario)},
          {"channel", channel_params_to_json(config.channel)},
          {"experiment",
           {{"user_weight_db_per_user", config.user_weight_db_per_user},
            {"trials_per_point", config.trials_per_point},
            {"master_seed", config.master_seed},
            {"output_path", config.output_path.string()},
            {"record_runtime", config.record_runtime},
            {"threads", config.threads}}}};
}

Json matching_to_json(const MatchingDocument& doc) {
  Json assignment = Json::array();
  for (const auto& [h, u] : doc.matching.pairs()) assignment.push_back({{"uav", u}, {"hap", h}});
  return {{"algorithm", doc.algorithm},
          {"channel_seed", doc.channel_seed},
          {"user_weight_db_per_user", doc.user_weight_db_per_user},
          {"channel", channel_params_to_json(doc.channel)},
          {"assignment", std::move(assignment)}};
}

MatchingDocument matching_from_json(const Json& doc, std::size_t n_haps, std::size_t m_uavs) {
  require_object(doc, "matching document");
  MatchingDocument out;
  out.algorithm = read_field<std::string>(doc, "algorithm", "");
  out.channel_seed = read_field<std::uint64_t>(doc, "channel_seed", 0);
  out.user_weight_db_per_user = read_field(doc, "user_weight_db_per_user", out.user_weight_db_per_user);
  if (const auto it = doc.find("channel"); it != doc.end()) out.channel = channel_params_from_json(*it);

  const auto assignment = doc.find("assignment");
  if (assignment == doc.end() || !assignment->is_array()) {
    throw ConfigError("matching: 'assignment' must be an array");
  }
  out.matching = Matching(n_haps, m_uavs);
  for (const Json& item : *assignment) {
    require_object(item, "assignment entry");
    const auto u = require_field<std::size_t>(item, "uav");
    const auto h = require_field<std::size_t>(item, "hap");
    if (u >= m_uavs || h >= n_haps) throw ConfigError("matching: id out of range for the scenario");
    if (out.matching.hap_of(u)) throw ConfigError("matching: UAV " + std::to_string(u) + " assigned twice");
    out.matching.assign(u, h);
  }
  return out;
}

Json summary_to_json(const ExperimentConfig& config, const ExperimentResult& result) {
  Json points = Json::array();
  for (const PointSummary& p : result.summary) {
    points.push_back({{"sweep_point", p.sweep_point},
                      {"n_haps", p.n_haps},
                      {"m_uavs", p.m_uavs},
                      {"trials", p.trials},
                      {"gs_mean_score", {{"mean", p.gs_mean}, {"std", p.gs_std}}},
                      {"random_mean_score", {{"mean", p.random_mean}, {"std", p.random_std}}},
                      {"score_gap", {{"mean", p.gap_mean}, {"std", p.gap_std}, {"stderr", p.gap_stderr}}}});
  }
  Json notes = Json::array();
  notes.push_back("score = path loss (dB) - user_weight * served_users; lower is better");
  notes.push_back("score_gap = random_mean_score - gs_mean_score");
  if (config.trials_per_point == 30) notes.push_back("trials_per_point is the default of 30, not a reference value");
  if (!config.record_runtime) notes.push_back("runtime columns are zeroed so results are reproducible");
  return {{"master_seed", config.master_seed},
          {"trials_per_point", config.trials_per_point},
          {"user_weight_db_per_user", config.user_weight_db_per_user},
          {"channel", channel_params_to_json(config.channel)},
          {"points", std::move(points)},
          {"notes", std::move(notes)}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace hapmatch
