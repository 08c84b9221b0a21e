#include "hapmatch/scenario.hpp"

#include <cmath>
#include <string>

#include "hapmatch/errors.hpp"
#include "hapmatch/rng.hpp"

namespace hapmatch {

void validate(const ScenarioConfig& c) {
  std::string bad;
  auto check = [&bad](bool ok, const char* field) {
    if (!ok) bad += bad.empty() ? field : std::string(", ") + field;
  };
  check(c.n_haps >= 1, "n_haps");
  check(c.m_uavs >= 1, "m_uavs");
  check(c.hap_capacity >= 1, "hap_capacity");
  check(std::isfinite(c.area_side_km) && c.area_side_km >= 0.0, "area_side_km");
  check(std::isfinite(c.hap_alt_range_km.lo) && std::isfinite(c.hap_alt_range_km.hi) && c.hap_alt_range_km.lo > 0.0 &&
            c.hap_alt_range_km.lo <= c.hap_alt_range_km.hi,
        "hap_alt_range_km");
  check(std::isfinite(c.uav_alt_range_km.lo) && std::isfinite(c.uav_alt_range_km.hi) && c.uav_alt_range_km.lo > 0.0 &&
            c.uav_alt_range_km.lo <= c.uav_alt_range_km.hi,
        "uav_alt_range_km");
  check(c.users_range.lo >= 0 && c.users_range.lo <= c.users_range.hi, "users_range");
  if (!bad.empty()) throw ContractViolation("invalid scenario config: " + bad);
}

Scenario generate_scenario(const ScenarioConfig& config) {
  validate(config);
  Rng rng(config.seed);
  Scenario s;
  s.seed = config.seed;
  s.haps.reserve(config.n_haps);
  s.uavs.reserve(config.m_uavs);
  for (std::size_t i = 0; i < config.n_haps; ++i) {
    Hap h;
    h.id = i;
    h.pos.x = rng.uniform_real(0.0, config.area_side_km);
    h.pos.y = rng.uniform_real(0.0, config.area_side_km);
    h.pos.alt = rng.uniform_real(config.hap_alt_range_km.lo, config.hap_alt_range_km.hi);
    h.capacity = config.hap_capacity;
    s.haps.push_back(h);
  }
  for (std::size_t j = 0; j < config.m_uavs; ++j) {
    Uav u;
    u.id = j;
    u.pos.x = rng.uniform_real(0.0, config.area_side_km);
    u.pos.y = rng.uniform_real(0.0, config.area_side_km);
    u.pos.alt = rng.uniform_real(config.uav_alt_range_km.lo, config.uav_alt_range_km.hi);
    u.served_users = static_cast<int>(rng.uniform_int(config.users_range.lo, config.users_range.hi));
    s.uavs.push_back(u);
  }
  return s;
}

}  // namespace hapmatch
