#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hapmatch {

using HapId = std::size_t;
using UavId = std::size_t;

/// Position in a local flat-earth Cartesian frame. All coordinates in km.
struct GeoPoint {
  double x = 0.0;    ///< ground plane, east
  double y = 0.0;    ///< ground plane, north
  double alt = 0.0;  ///< altitude above ground

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Throws ContractViolation unless all coordinates are finite and alt >= 0.
void validate(const GeoPoint& p);

/// Straight-line separation in km.
double distance_3d(const GeoPoint& a, const GeoPoint& b) noexcept;

/// High-altitude platform. Each antenna is one capacity slot.
struct Hap {
  HapId id = 0;
  GeoPoint pos;
  int capacity = 5;

  friend bool operator==(const Hap&, const Hap&) = default;
};

struct Uav {
  UavId id = 0;
  GeoPoint pos;
  int served_users = 0;

  friend bool operator==(const Uav&, const Uav&) = default;
};

/// A static HAP/UAV topology. Agents are stored in id order: haps[i].id == i.
struct Scenario {
  std::vector<Hap> haps;
  std::vector<Uav> uavs;
  std::uint64_t seed = 0;

  std::vector<int> capacities() const;
  std::vector<int> served_users() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Checks dense ids, capacities, user counts and positions. Throws ContractViolation.
void validate(const Scenario& s);

}  // namespace hapmatch
