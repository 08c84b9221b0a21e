#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hapmatch/channel.hpp"
#include "hapmatch/geo.hpp"
#include "hapmatch/scenario.hpp"

namespace hapmatch {

struct SweepPoint {
  std::size_t n_haps = 0;
  std::size_t m_uavs = 0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

/// 100..500 HAPs in steps of 100 with five UAVs per HAP.
std::vector<SweepPoint> default_sweep();

struct ExperimentConfig {
  ScenarioConfig scenario;  // n_haps/m_uavs are overridden per sweep point
  std::vector<SweepPoint> sweep = default_sweep();
  ChannelParams channel;
  double user_weight_db_per_user = 1.0;
  std::size_t trials_per_point = 30;
  std::uint64_t master_seed = 1;
  std::filesystem::path output_path;  // empty: keep results in memory only
  bool trace = false;                 // write trace.log next to the results
  bool record_runtime = false;        // wall-clock columns; makes the CSV non-reproducible
  unsigned threads = 0;               // 0: hardware concurrency
};

/// Throws ConfigError describing the first problem found.
void validate(const ExperimentConfig& config);

struct TrialResult {
  std::size_t sweep_point = 0;
  std::size_t n_haps = 0;
  std::size_t m_uavs = 0;
  std::size_t trial_index = 0;
  std::uint64_t trial_seed = 0;
  double gs_mean_score = 0.0;
  double random_mean_score = 0.0;
  double score_gap = 0.0;  // random - gs; positive when Gale-Shapley wins
  std::size_t gs_matched_count = 0;
  std::size_t random_matched_count = 0;
  std::size_t gs_proposals = 0;
  double gs_runtime_ms = 0.0;
  double random_runtime_ms = 0.0;
};

struct TrialOptions {
  std::ostream* trace = nullptr;
};

/// Substream indices of a trial seed.
inline constexpr std::uint64_t kScenarioStream = 0;
inline constexpr std::uint64_t kChannelStream = 1;
inline constexpr std::uint64_t kRandomMatchingStream = 2;

/// Seed of trial `trial_index` at sweep point `point_index`:
/// mix64(master_seed ^ mix64(point_index * 2^32 + trial_index)).
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::size_t point_index, std::size_t trial_index);

/// Builds one channel realisation from the trial seed, runs Gale-Shapley and the random
/// baseline on it and scores both against the same matrix. Throws StabilityError if the
/// Gale-Shapley result has a blocking pair.
TrialResult run_trial(const Scenario& scenario, const ChannelParams& channel, double user_weight,
                      std::uint64_t trial_seed, const TrialOptions& options = {});

struct PointSummary {
  std::size_t sweep_point = 0;
  std::size_t n_haps = 0;
  std::size_t m_uavs = 0;
  std::size_t trials = 0;
  double gs_mean = 0.0;
  double gs_std = 0.0;
  double random_mean = 0.0;
  double random_std = 0.0;
  double gap_mean = 0.0;
  double gap_std = 0.0;
  double gap_stderr = 0.0;
};

struct ExperimentResult {
  std::vector<TrialResult> trials;  // ordered by (sweep_point, trial_index)
  std::vector<PointSummary> summary;
};

/// Runs every sweep point. When output_path is set, results.csv and summary.json are
/// written there; the directory is prepared before any trial runs so I/O problems
/// surface as IoError up front.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::vector<PointSummary> summarize(const std::vector<TrialResult>& trials);

inline constexpr const char* kResultsCsvHeader =
    "sweep_point,n_haps,m_uavs,trial,gs_mean_score,random_mean_score,score_gap,gs_matched,"
    "gs_runtime_ms,random_runtime_ms";

/// Writes the results CSV. Runtime columns are 0.000000 unless record_runtime is set.
void write_results_csv(std::ostream& out, const std::vector<TrialResult>& trials, bool record_runtime);

std::string format_fixed6(double value);

}  // namespace hapmatch
