#include "hapmatch/geo.hpp"

#include <cmath>
#include <string>

#include "hapmatch/errors.hpp"

namespace hapmatch {

void validate(const GeoPoint& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.alt)) {
    throw ContractViolation("GeoPoint has a non-finite coordinate");
  }
  if (p.alt < 0.0) {
    throw ContractViolation("GeoPoint altitude is negative: " + std::to_string(p.alt));
  }
}

double distance_3d(const GeoPoint& a, const GeoPoint& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.alt - b.alt;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<int> Scenario::capacities() const {
  std::vector<int> out;
  out.reserve(haps.size());
  for (const auto& h : haps) out.push_back(h.capacity);
  return out;
}

std::vector<int> Scenario::served_users() const {
  std::vector<int> out;
  out.reserve(uavs.size());
  for (const auto& u : uavs) out.push_back(u.served_users);
  return out;
}

void validate(const Scenario& s) {
  for (std::size_t i = 0; i < s.haps.size(); ++i) {
    const Hap& h = s.haps[i];
    if (h.id != i) throw ContractViolation("HAP at position " + std::to_string(i) + " has id " + std::to_string(h.id));
    if (h.capacity < 1) throw ContractViolation("HAP " + std::to_string(i) + " has capacity < 1");
    validate(h.pos);
  }
  for (std::size_t j = 0; j < s.uavs.size(); ++j) {
    const Uav& u = s.uavs[j];
    if (u.id != j) throw ContractViolation("UAV at position " + std::to_string(j) + " has id " + std::to_string(u.id));
    if (u.served_users < 0) throw ContractViolation("UAV " + std::to_string(j) + " has negative served_users");
    validate(u.pos);
  }
}

}  // namespace hapmatch
