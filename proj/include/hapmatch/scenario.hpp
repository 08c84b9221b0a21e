#pragma once

#include <cstddef>
#include <cstdint>

#include "hapmatch/geo.hpp"

namespace hapmatch {

template <typename T>
struct Interval {
  T lo{};
  T hi{};

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Generation parameters for one topology. Defaults follow the smallest evaluated size.
struct ScenarioConfig {
  std::size_t n_haps = 100;
  std::size_t m_uavs = 500;
  int hap_capacity = 5;
  double area_side_km = 100.0;
  Interval<double> hap_alt_range_km{18.0, 22.0};
  Interval<double> uav_alt_range_km{0.05, 0.35};
  Interval<int> users_range{1, 10};
  std::uint64_t seed = 0;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws ContractViolation listing every offending field.
void validate(const ScenarioConfig& config);

/// Uniform i.i.d. placement over [0, area_side]^2 and the altitude ranges. Draw order is
/// fixed: HAPs by id (x, y, alt), then UAVs by id (x, y, alt, served_users).
Scenario generate_scenario(const ScenarioConfig& config);

}  // namespace hapmatch
