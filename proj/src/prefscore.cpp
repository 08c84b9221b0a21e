#include "hapmatch/prefscore.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hapmatch/errors.hpp"
#include "hapmatch/matching.hpp"

namespace hapmatch {

namespace {

template <typename Id>
bool is_permutation_of_range(const std::vector<Id>& list, std::size_t n, std::vector<char>& seen) {
  if (list.size() != n) return false;
  seen.assign(n, 0);
  for (Id id : list) {
    if (id >= n || seen[id]) return false;
    seen[id] = 1;
  }
  return true;
}

// Indices 0..count-1 sorted by ascending key(i), ties by ascending index.
template <typename KeyFn>
std::vector<std::size_t> ranked_by(std::size_t count, KeyFn key) {
  std::vector<double> keys(count);
  for (std::size_t i = 0; i < count; ++i) keys[i] = key(i);
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&keys](std::size_t a, std::size_t b) {
    return keys[a] < keys[b] || (keys[a] == keys[b] && a < b);
  });
  return order;
}

}  // namespace

void validate(const PreferenceProfile& profile) {
  const std::size_t n = profile.n_haps();
  const std::size_t m = profile.m_uavs();
  std::vector<char> seen;
  for (std::size_t h = 0; h < n; ++h) {
    if (!is_permutation_of_range(profile.hap_prefs[h], m, seen)) {
      throw ContractViolation("preference list of HAP " + std::to_string(h) + " is not a permutation of the UAVs");
    }
  }
  for (std::size_t u = 0; u < m; ++u) {
    if (!is_permutation_of_range(profile.uav_prefs[u], n, seen)) {
      throw ContractViolation("preference list of UAV " + std::to_string(u) + " is not a permutation of the HAPs");
    }
  }
}

PreferenceProfile build_preferences(const PathLossMatrix& matrix, std::span<const int> served_users,
                                    double user_weight) {
  const std::size_t n = matrix.n_haps();
  const std::size_t m = matrix.m_uavs();
  if (served_users.size() != m) {
    throw ContractViolation("build_preferences: " + std::to_string(served_users.size()) +
                            " user counts for a matrix with " + std::to_string(m) + " UAVs");
  }
  if (!(user_weight >= 0.0)) throw ContractViolation("build_preferences: user weight must be non-negative");

  PreferenceProfile profile;
  profile.user_weight_db_per_user = user_weight;
  profile.hap_prefs.resize(n);
  profile.uav_prefs.resize(m);
  for (std::size_t h = 0; h < n; ++h) {
    profile.hap_prefs[h] = ranked_by(m, [&](std::size_t u) {
      return hap_preference_key(matrix.at(h, u), served_users[u], user_weight);
    });
  }
  for (std::size_t u = 0; u < m; ++u) {
    profile.uav_prefs[u] = ranked_by(n, [&](std::size_t h) { return matrix.at(h, u); });
  }
  return profile;
}

ScoreReport score_matching(const Matching& matching, const PathLossMatrix& matrix,
                           std::span<const int> served_users, double user_weight) {
  if (matching.n_haps() != matrix.n_haps() || matching.m_uavs() != matrix.m_uavs() ||
      served_users.size() != matrix.m_uavs()) {
    throw ContractViolation("score_matching: dimension mismatch");
  }
  ScoreReport report;
  report.per_match_scores.reserve(matching.size());
  for (const auto& [h, u] : matching.pairs()) {
    report.per_match_scores.push_back(hap_preference_key(matrix.at(h, u), served_users[u], user_weight));
  }
  report.matched_count = report.per_match_scores.size();
  report.unmatched_uavs = matching.m_uavs() - report.matched_count;
  if (report.matched_count > 0) {
    const double sum = std::accumulate(report.per_match_scores.begin(), report.per_match_scores.end(), 0.0);
    report.mean_score = sum / static_cast<double>(report.matched_count);
  }
  return report;
}

}  // namespace hapmatch
