// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hapmatch/channel.hpp"
#include "hapmatch/harness.hpp"
#include "hapmatch/matching.hpp"
#include "hapmatch/prefscore.hpp"
#include "hapmatch/scenario.hpp"
#include "oracles.hpp"

using namespace hapmatch;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  if (!out.pass) ++failures;
  std::printf("[%s] %d. %s (%.2f s): %s\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), seconds_since(t0),
              out.detail.c_str());
  std::fflush(stdout);
}

// 92.45 + 20 log10(2) + 20 log10(19.8) + 25.5 + 23, evaluated with mpmath at 30 digits.
constexpr double kSingleLinkOracle = 172.903903718510246115354671344;

Outcome channel_golden() {
  const double a = fspl(1.0, 1.0);
  const double b = fspl(10.0, 1.0);
  Scenario s;
  s.haps.push_back(Hap{0, {0, 0, 20}, 1});
  s.uavs.push_back(Uav{0, {0, 0, 0.2}, 0});
  ChannelParams p;
  p.carrier_freq_ghz = 2.0;
  p.shadow_fading_variance_db2 = 0.0;
  Rng rng(0);
  const double total = build_path_loss_matrix(s, p, rng).at(0, 0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "fspl(1,1)=%.12f fspl(10,1)=%.12f link=%.6f (oracle %.6f)", a, b, total,
                kSingleLinkOracle);
  return {a == 92.45 && b == 112.45 && std::abs(total - kSingleLinkOracle) <= 1e-3, buf};
}

Outcome stability_suite() {
  const auto t0 = Clock::now();
  Rng rng(20240601);
  std::size_t unstable = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto inst = oracle::random_instance(rng, 20, 5, 50);
    const Matching m = gale_shapley(inst.profile, inst.capacities);
    if (!find_blocking_pairs(m, inst.profile, inst.capacities).empty()) ++unstable;
  }
  const double secs = seconds_since(t0);
  return {unstable == 0 && secs < 10.0,
          std::to_string(unstable) + " unstable of 1000, " + std::to_string(secs) + " s (limit 10 s)"};
}

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  Rng rng(777);
  std::size_t not_member = 0, not_optimal = 0, total_stable = 0;
  for (int i = 0; i < 200; ++i) {
    const auto inst = oracle::random_small_instance(rng);
    const auto all = enumerate_stable_matchings(inst.profile, inst.capacities);
    total_stable += all.size();
    const Matching gs = gale_shapley(inst.profile, inst.capacities);
    if (std::find(all.begin(), all.end(), gs) == all.end()) ++not_member;
    for (const auto& other : all) {
      if (!oracle::hap_weakly_better(gs, other, inst.profile)) {
        ++not_optimal;
        break;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {not_member == 0 && not_optimal == 0 && secs < 60.0,
          "200 instances, " + std::to_string(total_stable) + " stable matchings enumerated, " +
              std::to_string(not_member) + " non-members, " + std::to_string(not_optimal) + " non-optimal, " +
              std::to_string(secs) + " s (limit 60 s)"};
}

struct DefaultRun {
  ExperimentResult result;
  std::string csv;
  double seconds = 0.0;
};

DefaultRun run_default_experiment() {
  ExperimentConfig config;  // default sweep, 30 trials per point
  const auto t0 = Clock::now();
  DefaultRun run;
  run.result = run_experiment(config);
  run.seconds = seconds_since(t0);
  std::ostringstream csv;
  write_results_csv(csv, run.result.trials, config.record_runtime);
  run.csv = csv.str();
  return run;
}

Outcome fig3_ordering(const DefaultRun& run) {
  bool ok = run.seconds < 15 * 60.0 && run.result.summary.size() == 5;
  std::string detail;
  for (const auto& p : run.result.summary) {
    ok = ok && p.trials == 30 && p.gs_mean < p.random_mean;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%zu HAPs: gs %.3f < random %.3f; ", p.n_haps, p.gs_mean, p.random_mean);
    detail += buf;
  }
  return {ok, detail + std::to_string(run.seconds) + " s (limit 900 s)"};
}

Outcome fig4_gap(const DefaultRun& run) {
  const auto& s = run.result.summary;
  if (s.size() < 2) return {false, "fewer than two sweep points"};
  bool ok = true;
  std::string detail;
  for (const auto& p : s) {
    ok = ok && p.gap_mean > 0.0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu HAPs: gap %.3f +/- %.3f; ", p.n_haps, p.gap_mean, p.gap_stderr);
    detail += buf;
  }
  const auto& first = s.front();
  const auto& last = s.back();
  const double se = std::hypot(first.gap_stderr, last.gap_stderr);
  ok = ok && last.gap_mean >= first.gap_mean - se;
  char buf[128];
  std::snprintf(buf, sizeof buf, "last - first = %.3f (allowed down to -%.3f)", last.gap_mean - first.gap_mean, se);
  return {ok, detail + buf};
}

Outcome determinism(const DefaultRun& a, const DefaultRun& b) {
  return {!a.csv.empty() && a.csv == b.csv,
          std::to_string(a.csv.size()) + " vs " + std::to_string(b.csv.size()) + " bytes, " +
              (a.csv == b.csv ? "identical" : "different")};
}

Outcome scale_runtime() {
  ScenarioConfig cfg;
  cfg.n_haps = 500;
  cfg.m_uavs = 2500;
  cfg.seed = 500;
  const Scenario s = generate_scenario(cfg);
  Rng rng(2500);
  const auto matrix = build_path_loss_matrix(s, ChannelParams{}, rng);
  const auto profile = build_preferences(matrix, s.served_users(), 1.0);
  const auto caps = s.capacities();
  GaleShapleyStats stats;
  const auto t0 = Clock::now();
  const Matching m = gale_shapley(profile, caps, &stats);
  const double secs = seconds_since(t0);
  const std::size_t bound = 500u * 2500u;
  return {secs < 10.0 && stats.proposals <= bound && m.size() == 2500,
          std::to_string(secs) + " s (limit 10 s), " + std::to_string(stats.proposals) + " proposals (bound " +
              std::to_string(bound) + "), " + std::to_string(m.size()) + " matched"};
}

Outcome shadow_fading_moments() {
  Rng rng(6);
  constexpr std::size_t n = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  std::vector<double> draws(n);
  for (double& x : draws) {
    x = sample_shadow_fading(rng, 6.0);
    sum += x;
  }
  const double mean = sum / n;
  for (double x : draws) sum_sq += (x - mean) * (x - mean);
  const double var = sum_sq / (n - 1);
  char buf[128];
  std::snprintf(buf, sizeof buf, "mean %.5f (|.| <= 0.01), variance %.5f (6 +/- 0.05)", mean, var);
  return {std::abs(mean) <= 0.01 && std::abs(var - 6.0) <= 0.05, buf};
}

}  // namespace

int main() {
  report(1, "channel golden values", channel_golden);
  report(2, "stability suite", stability_suite);
  report(3, "oracle equivalence", oracle_equivalence);

  DefaultRun first, second;
  std::string run_error;
  try {
    first = run_default_experiment();
    second = run_default_experiment();
  } catch (const std::exception& e) {
    run_error = e.what();
  }
  auto guarded = [&](auto fn) {
    return [&, fn]() -> Outcome {
      if (!run_error.empty()) return {false, "default experiment failed: " + run_error};
      return fn();
    };
  };
  report(4, "GS score below random at every sweep point", guarded([&] { return fig3_ordering(first); }));
  report(5, "score gap positive and not decreasing", guarded([&] { return fig4_gap(first); }));
  report(6, "byte-identical results for the same master seed", guarded([&] { return determinism(first, second); }));
  report(7, "500 x 2500 solve runtime and proposal bound", scale_runtime);
  report(8, "shadow-fading moments", shadow_fading_moments);

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
