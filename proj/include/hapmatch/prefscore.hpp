#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hapmatch/channel.hpp"
#include "hapmatch/geo.hpp"

namespace hapmatch {

class Matching;

/// Complete strict rankings for both sides, best first.
struct PreferenceProfile {
  std::vector<std::vector<UavId>> hap_prefs;
  std::vector<std::vector<HapId>> uav_prefs;
  double user_weight_db_per_user = 1.0;

  std::size_t n_haps() const noexcept { return hap_prefs.size(); }
  std::size_t m_uavs() const noexcept { return uav_prefs.size(); }

  friend bool operator==(const PreferenceProfile&, const PreferenceProfile&) = default;
};

/// Throws ContractViolation unless every list is a permutation of the opposite side.
void validate(const PreferenceProfile& profile);

/// HAP-side desirability of a UAV, lower is better: path loss discounted by the number
/// of users the UAV serves.
constexpr double hap_preference_key(double loss_db, int served_users, double user_weight) noexcept {
  return loss_db - user_weight * static_cast<double>(served_users);
}

/// HAPs rank UAVs by ascending hap_preference_key, UAVs rank HAPs by ascending loss.
/// Ties go to the lower id.
PreferenceProfile build_preferences(const PathLossMatrix& matrix, std::span<const int> served_users,
                                    double user_weight);

struct ScoreReport {
  std::vector<double> per_match_scores;  // ascending UAV id
  std::optional<double> mean_score;      // absent when nothing is matched
  std::size_t matched_count = 0;
  std::size_t unmatched_uavs = 0;
};

/// Scores each matched pair with hap_preference_key and averages. Lower is better.
ScoreReport score_matching(const Matching& matching, const PathLossMatrix& matrix,
                           std::span<const int> served_users, double user_weight);

}  // namespace hapmatch
