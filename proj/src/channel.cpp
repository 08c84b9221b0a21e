#include "hapmatch/channel.hpp"

#include <cmath>
#include <string>

#include "hapmatch/errors.hpp"

namespace hapmatch {

void validate(const ChannelParams& p) {
  std::string bad;
  auto check = [&bad](bool ok, const char* field) {
    if (!ok) bad += bad.empty() ? field : std::string(", ") + field;
  };
  check(std::isfinite(p.carrier_freq_ghz) && p.carrier_freq_ghz > 0.0, "carrier_freq_ghz");
  check(std::isfinite(p.atmospheric_loss_db) && p.atmospheric_loss_db >= 0.0, "atmospheric_loss_db");
  check(std::isfinite(p.scintillation_loss_db) && p.scintillation_loss_db >= 0.0, "scintillation_loss_db");
  check(std::isfinite(p.clutter_loss_db) && p.clutter_loss_db >= 0.0, "clutter_loss_db");
  check(std::isfinite(p.shadow_fading_variance_db2) && p.shadow_fading_variance_db2 >= 0.0,
        "shadow_fading_variance_db2");
  check(std::isfinite(p.elevation_angle_deg), "elevation_angle_deg");
  if (!bad.empty()) throw ContractViolation("invalid channel parameters: " + bad);
}

double fspl(double d_km, double f_ghz) {
  if (!(d_km > 0.0) || !std::isfinite(d_km)) {
    throw DomainError("fspl: distance must be positive and finite, got " + std::to_string(d_km));
  }
  if (!(f_ghz > 0.0) || !std::isfinite(f_ghz)) {
    throw DomainError("fspl: frequency must be positive and finite, got " + std::to_string(f_ghz));
  }
  return 92.45 + 20.0 * std::log10(f_ghz) + 20.0 * std::log10(d_km);
}

double basic_path_loss(double d_km, double f_ghz, double shadow_fading_db, double clutter_loss_db) {
  return fspl(d_km, f_ghz) + shadow_fading_db + clutter_loss_db;
}

double sample_shadow_fading(Rng& rng, double variance_db2) {
  if (!(variance_db2 >= 0.0) || !std::isfinite(variance_db2)) {
    throw DomainError("shadow fading variance must be non-negative, got " + std::to_string(variance_db2));
  }
  const double z = rng.standard_normal();
  if (variance_db2 == 0.0) return 0.0;
  return std::sqrt(variance_db2) * z;
}

PathLossMatrix::PathLossMatrix(std::size_t n_haps, std::size_t m_uavs)
    : n_haps_(n_haps), m_uavs_(m_uavs), loss_db_(n_haps * m_uavs, 0.0), shadow_fading_db_(n_haps * m_uavs, 0.0) {}

PathLossMatrix::PathLossMatrix(std::size_t n_haps, std::size_t m_uavs, std::vector<double> loss_db)
    : n_haps_(n_haps), m_uavs_(m_uavs), loss_db_(std::move(loss_db)), shadow_fading_db_(n_haps * m_uavs, 0.0) {
  if (loss_db_.size() != n_haps * m_uavs) {
    throw ContractViolation("PathLossMatrix: expected " + std::to_string(n_haps * m_uavs) + " values, got " +
                            std::to_string(loss_db_.size()));
  }
  for (double v : loss_db_) {
    if (!std::isfinite(v)) throw ContractViolation("PathLossMatrix: non-finite entry");
  }
}

PathLossMatrix build_path_loss_matrix(const Scenario& scenario, const ChannelParams& params, Rng& rng) {
  validate(params);
  if (scenario.haps.empty() || scenario.uavs.empty()) {
    throw ContractViolation("build_path_loss_matrix: scenario needs at least one HAP and one UAV");
  }
  const std::size_t n = scenario.haps.size();
  const std::size_t m = scenario.uavs.size();
  PathLossMatrix matrix(n, m);
  for (std::size_t h = 0; h < n; ++h) {
    const GeoPoint& hp = scenario.haps[h].pos;
    for (std::size_t u = 0; u < m; ++u) {
      const double d = distance_3d(hp, scenario.uavs[u].pos);
      if (d <= 0.0) {
        throw DomainError("HAP " + std::to_string(h) + " and UAV " + std::to_string(u) + " are at the same position");
      }
      const double sf = sample_shadow_fading(rng, params.shadow_fading_variance_db2);
      const double pl_b = basic_path_loss(d, params.carrier_freq_ghz, sf, params.clutter_loss_db);
      matrix.at(h, u) = total_path_loss(pl_b, params.atmospheric_loss_db, params.scintillation_loss_db);
      matrix.set_shadow_fading(h, u, sf);
    }
  }
  return matrix;
}

}  // namespace hapmatch
