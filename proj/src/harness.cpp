#include "hapmatch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "hapmatch/errors.hpp"
#include "hapmatch/matching.hpp"
#include "hapmatch/prefscore.hpp"
#include "hapmatch/rng.hpp"
#include "hapmatch/serialization.hpp"

namespace hapmatch {

std::vector<SweepPoint> default_sweep() {
  std::vector<SweepPoint> sweep;
  for (std::size_t n = 100; n <= 500; n += 100) sweep.push_back({n, 5 * n});
  return sweep;
}

void validate(const ExperimentConfig& config) {
  if (config.trials_per_point < 1) throw ConfigError("experiment.trials_per_point must be at least 1");
  if (config.sweep.empty()) throw ConfigError("scenario sweep is empty");
  for (std::size_t i = 0; i < config.sweep.size(); ++i) {
    const auto& p = config.sweep[i];
    if (p.n_haps < 1 || p.m_uavs < 1) throw ConfigError("sweep point " + std::to_string(i) + " has an empty side");
    if (i > 0) {
      const auto& q = config.sweep[i - 1];
      if (std::tie(q.n_haps, q.m_uavs) >= std::tie(p.n_haps, p.m_uavs)) {
        throw ConfigError("sweep points must be strictly increasing in (n_haps, m_uavs)");
      }
    }
  }
  if (!(config.user_weight_db_per_user >= 0.0) || !std::isfinite(config.user_weight_db_per_user)) {
    throw ConfigError("experiment.user_weight_db_per_user must be finite and non-negative");
  }
  try {
    validate(config.channel);
    ScenarioConfig probe = config.scenario;
    probe.n_haps = config.sweep.front().n_haps;
    probe.m_uavs = config.sweep.front().m_uavs;
    validate(probe);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
}

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::size_t point_index, std::size_t trial_index) {
  const std::uint64_t counter = (static_cast<std::uint64_t>(point_index) << 32) + static_cast<std::uint64_t>(trial_index);
  return mix64(master_seed ^ mix64(counter));
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

TrialResult run_trial(const Scenario& scenario, const ChannelParams& channel, double user_weight,
                      std::uint64_t trial_seed, const TrialOptions& options) {
  validate(scenario);
  Rng channel_rng(substream_seed(trial_seed, kChannelStream));
  const PathLossMatrix matrix = build_path_loss_matrix(scenario, channel, channel_rng);
  const std::vector<int> users = scenario.served_users();
  const std::vector<int> caps = scenario.capacities();
  const PreferenceProfile profile = build_preferences(matrix, users, user_weight);

  TrialResult result;
  result.n_haps = scenario.haps.size();
  result.m_uavs = scenario.uavs.size();
  result.trial_seed = trial_seed;

  GaleShapleyStats stats;
  GaleShapleyOptions gs_options;
  gs_options.trace = options.trace;
  auto start = Clock::now();
  const Matching gs = gale_shapley(profile, caps, &stats, gs_options);
  result.gs_runtime_ms = elapsed_ms(start);
  result.gs_proposals = stats.proposals;

  const auto blocking = find_blocking_pairs(gs, profile, caps);
  if (!blocking.empty()) {
    throw StabilityError("Gale-Shapley result has " + std::to_string(blocking.size()) + " blocking pairs, first (" +
                             std::to_string(blocking.front().hap) + ", " + std::to_string(blocking.front().uav) + ")",
                         trial_seed);
  }

  Rng random_rng(substream_seed(trial_seed, kRandomMatchingStream));
  start = Clock::now();
  const Matching rnd = random_matching(random_rng, result.n_haps, caps, result.m_uavs);
  result.random_runtime_ms = elapsed_ms(start);

  const ScoreReport gs_report = score_matching(gs, matrix, users, user_weight);
  const ScoreReport rnd_report = score_matching(rnd, matrix, users, user_weight);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  result.gs_mean_score = gs_report.mean_score.value_or(nan);
  result.random_mean_score = rnd_report.mean_score.value_or(nan);
  result.score_gap = result.random_mean_score - result.gs_mean_score;
  result.gs_matched_count = gs_report.matched_count;
  result.random_matched_count = rnd_report.matched_count;
  return result;
}

std::vector<PointSummary> summarize(const std::vector<TrialResult>& trials) {
  std::vector<PointSummary> out;
  std::size_t i = 0;
  while (i < trials.size()) {
    std::size_t j = i;
    std::vector<double> gs, rnd, gap;
    while (j < trials.size() && trials[j].sweep_point == trials[i].sweep_point) {
      gs.push_back(trials[j].gs_mean_score);
      rnd.push_back(trials[j].random_mean_score);
      gap.push_back(trials[j].score_gap);
      ++j;
    }
    PointSummary p;
    p.sweep_point = trials[i].sweep_point;
    p.n_haps = trials[i].n_haps;
    p.m_uavs = trials[i].m_uavs;
    p.trials = j - i;
    p.gs_mean = mean_of(gs);
    p.gs_std = sample_std(gs, p.gs_mean);
    p.random_mean = mean_of(rnd);
    p.random_std = sample_std(rnd, p.random_mean);
    p.gap_mean = mean_of(gap);
    p.gap_std = sample_std(gap, p.gap_mean);
    p.gap_stderr = p.gap_std / std::sqrt(static_cast<double>(p.trials));
    out.push_back(p);
    i = j;
  }
  return out;
}

std::string format_fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

void write_results_csv(std::ostream& out, const std::vector<TrialResult>& trials, bool record_runtime) {
  out << kResultsCsvHeader << '\n';
  for (const TrialResult& t : trials) {
    out << t.sweep_point << ',' << t.n_haps << ',' << t.m_uavs << ',' << t.trial_index << ','
        << format_fixed6(t.gs_mean_score) << ',' << format_fixed6(t.random_mean_score) << ','
        << format_fixed6(t.score_gap) << ',' << t.gs_matched_count << ','
        << format_fixed6(record_runtime ? t.gs_runtime_ms : 0.0) << ','
        << format_fixed6(record_runtime ? t.random_runtime_ms : 0.0) << '\n';
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);

  // Prepare outputs first: an unwritable path must fail before any trial runs.
  std::ofstream csv, summary, trace_file;
  const bool write = !config.output_path.empty();
  if (write) {
    std::error_code ec;
    std::filesystem::create_directories(config.output_path, ec);
    if (ec) throw IoError("cannot create " + config.output_path.string() + ": " + ec.message());
    auto open = [](std::ofstream& f, const std::filesystem::path& p) {
      f.open(p, std::ios::binary | std::ios::trunc);
      if (!f) throw IoError("cannot write " + p.string());
    };
    open(csv, config.output_path / "results.csv");
    open(summary, config.output_path / "summary.json");
    if (config.trace) open(trace_file, config.output_path / "trace.log");
  }

  struct Job {
    std::size_t point;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  for (std::size_t p = 0; p < config.sweep.size(); ++p) {
    for (std::size_t t = 0; t < config.trials_per_point; ++t) jobs.push_back({p, t});
  }

  ExperimentResult result;
  result.trials.resize(jobs.size());
  std::vector<std::string> traces(config.trace ? jobs.size() : 0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      try {
        const Job& job = jobs[k];
        const std::uint64_t seed = derive_trial_seed(config.master_seed, job.point, job.trial);
        ScenarioConfig sc = config.scenario;
        sc.n_haps = config.sweep[job.point].n_haps;
        sc.m_uavs = config.sweep[job.point].m_uavs;
        sc.seed = substream_seed(seed, kScenarioStream);
        const Scenario scenario = generate_scenario(sc);

        std::ostringstream trace;
        TrialOptions options;
        if (config.trace) options.trace = &trace;
        TrialResult r = run_trial(scenario, config.channel, config.user_weight_db_per_user, seed, options);
        r.sweep_point = job.point;
        r.trial_index = job.trial;
        result.trials[k] = r;
        if (config.trace) {
          traces[k] = "# sweep_point " + std::to_string(job.point) + " trial " + std::to_string(job.trial) + "\n" +
                      trace.str();
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };

  unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.summary = summarize(result.trials);

  if (write) {
    write_results_csv(csv, result.trials, config.record_runtime);
    summary << summary_to_json(config, result).dump(2) << '\n';
    for (const auto& t : traces) trace_file << t;
    if (!csv || !summary || (config.trace && !trace_file)) throw IoError("failed writing results");
  }
  return result;
}

}  // namespace hapmatch
