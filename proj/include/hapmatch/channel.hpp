#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hapmatch/geo.hpp"
#include "hapmatch/rng.hpp"

namespace hapmatch {

/// Constants of the HAP-UAV link budget. Defaults are the urban NLOS values.
struct ChannelParams {
  double carrier_freq_ghz = 2.0;
  double atmospheric_loss_db = 23.0;
  double scintillation_loss_db = 0.0;  // zero for latitudes between 20 and 60 degrees
  double clutter_loss_db = 25.5;
  double shadow_fading_variance_db2 = 6.0;
  double elevation_angle_deg = 90.0;  // informational; clutter loss is a constant

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

/// Throws ContractViolation naming every out-of-range field.
void validate(const ChannelParams& params);

/// Free-space path loss in dB for a distance in km and a frequency in GHz.
/// Throws DomainError for non-positive or non-finite arguments.
double fspl(double d_km, double f_ghz);

/// FSPL + shadow fading + clutter loss.
double basic_path_loss(double d_km, double f_ghz, double shadow_fading_db, double clutter_loss_db);

/// Basic path loss + atmospheric gas attenuation + scintillation.
constexpr double total_path_loss(double pl_b_db, double pl_g_db, double pl_s_db) noexcept {
  return pl_b_db + pl_g_db + pl_s_db;
}

/// One zero-mean Gaussian draw with the given variance (dB^2). Consumes one logical draw
/// even when the variance is zero. Throws DomainError for negative or non-finite variance.
double sample_shadow_fading(Rng& rng, double variance_db2);

/// Dense HAP x UAV loss matrix, row-major by HAP.
class PathLossMatrix {
 public:
  PathLossMatrix() = default;
  PathLossMatrix(std::size_t n_haps, std::size_t m_uavs);
  PathLossMatrix(std::size_t n_haps, std::size_t m_uavs, std::vector<double> loss_db);

  std::size_t n_haps() const noexcept { return n_haps_; }
  std::size_t m_uavs() const noexcept { return m_uavs_; }

  double at(HapId h, UavId u) const { return loss_db_[index(h, u)]; }
  double& at(HapId h, UavId u) { return loss_db_[index(h, u)]; }

  /// Shadow-fading component drawn for the link; zero for matrices built from raw values.
  double shadow_fading(HapId h, UavId u) const { return shadow_fading_db_[index(h, u)]; }
  void set_shadow_fading(HapId h, UavId u, double sf_db) { shadow_fading_db_[index(h, u)] = sf_db; }

  const std::vector<double>& values() const noexcept { return loss_db_; }

  friend bool operator==(const PathLossMatrix&, const PathLossMatrix&) = default;

 private:
  std::size_t index(HapId h, UavId u) const { return h * m_uavs_ + u; }

  std::size_t n_haps_ = 0;
  std::size_t m_uavs_ = 0;
  std::vector<double> loss_db_;
  std::vector<double> shadow_fading_db_;
};

/// Total path loss for every HAP-UAV link. Shadow fading is drawn once per link in
/// row-major order (all UAVs of HAP 0, then HAP 1, ...).
///
/// Throws DomainError naming the pair when a HAP and a UAV coincide.
PathLossMatrix build_path_loss_matrix(const Scenario& scenario, const ChannelParams& params, Rng& rng);

}  // namespace hapmatch
