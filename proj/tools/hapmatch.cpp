// hapmatch: HAP-UAV stable matching simulator.
//
// Exit codes: 0 success, 1 unstable matching (verify), 2 config error, 3 I/O error,
// 4 internal stability-assertion failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "hapmatch/channel.hpp"
#include "hapmatch/errors.hpp"
#include "hapmatch/harness.hpp"
#include "hapmatch/matching.hpp"
#include "hapmatch/prefscore.hpp"
#include "hapmatch/scenario.hpp"
#include "hapmatch/serialization.hpp"

namespace {

using namespace hapmatch;

constexpr int kExitUnstable = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

// A params file is either a bare channel object or a config document with a "channel"
// section. An optional top-level "seed" selects the shadow-fading stream.
struct ParamsFile {
  ChannelParams channel;
  std::optional<std::uint64_t> seed;
  std::optional<double> user_weight;
};

ParamsFile load_params(const std::string& path) {
  const Json doc = read_json_file(path);
  if (!doc.is_object()) throw ConfigError(path + ": expected an object");
  ParamsFile out;
  out.channel = channel_params_from_json(doc.contains("channel") ? doc.at("channel") : doc);
  if (doc.contains("seed")) out.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("experiment") && doc.at("experiment").contains("user_weight_db_per_user")) {
    out.user_weight = doc.at("experiment").at("user_weight_db_per_user").get<double>();
  }
  if (doc.contains("user_weight_db_per_user")) out.user_weight = doc.at("user_weight_db_per_user").get<double>();
  return out;
}

int cmd_simulate(const std::string& config_path, const std::optional<std::string>& out_dir,
                 const std::optional<std::size_t>& trials, const std::optional<std::uint64_t>& seed, bool trace,
                 bool timing, const std::optional<unsigned>& threads) {
  ExperimentConfig config = experiment_config_from_json(read_json_file(config_path));
  if (out_dir) config.output_path = *out_dir;
  if (trials) config.trials_per_point = *trials;
  if (seed) config.master_seed = *seed;
  if (threads) config.threads = *threads;
  config.trace = trace;
  config.record_runtime = config.record_runtime || timing;
  if (config.output_path.empty()) config.output_path = "results";
  validate(config);

  const ExperimentResult result = run_experiment(config);
  for (const PointSummary& p : result.summary) {
    std::cout << "point " << p.sweep_point << " (" << p.n_haps << " HAPs, " << p.m_uavs << " UAVs, " << p.trials
              << " trials): gs " << format_fixed6(p.gs_mean) << " random " << format_fixed6(p.random_mean) << " gap "
              << format_fixed6(p.gap_mean) << " +/- " << format_fixed6(p.gap_stderr) << '\n';
  }
  std::cout << "wrote " << (config.output_path / "results.csv").string() << '\n';
  return 0;
}

int cmd_gen_scenario(const std::string& config_path, const std::string& out_path,
                     const std::optional<std::uint64_t>& seed) {
  const Json doc = read_json_file(config_path);
  if (!doc.is_object()) throw ConfigError(config_path + ": expected an object");
  ScenarioConfig sc = scenario_config_from_json(doc.contains("scenario") ? doc.at("scenario") : doc);
  if (doc.contains("scenario") && doc.at("scenario").contains("sweep") && !doc.at("scenario").contains("n_haps")) {
    const ExperimentConfig ec = experiment_config_from_json(doc);
    sc.n_haps = ec.sweep.front().n_haps;
    sc.m_uavs = ec.sweep.front().m_uavs;
  }
  if (seed) sc.seed = *seed;
  write_text_file(out_path, scenario_to_json(generate_scenario(sc)).dump(2) + "\n");
  return 0;
}

int cmd_pathloss(const std::string& scenario_path, const std::string& params_path, const std::string& out_path) {
  const Scenario scenario = scenario_from_json(read_json_file(scenario_path));
  const ParamsFile params = load_params(params_path);
  Rng rng(params.seed.value_or(scenario.seed));
  const PathLossMatrix matrix = build_path_loss_matrix(scenario, params.channel, rng);

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + out_path);
  out << "hap_id,uav_id,loss_db\n";
  for (HapId h = 0; h < matrix.n_haps(); ++h) {
    for (UavId u = 0; u < matrix.m_uavs(); ++u) out << h << ',' << u << ',' << format_fixed6(matrix.at(h, u)) << '\n';
  }
  if (!out) throw IoError("write failed for " + out_path);
  return 0;
}

int cmd_match(const std::string& scenario_path, const std::optional<std::string>& params_path,
              const std::string& algorithm, const std::optional<std::uint64_t>& seed, double user_weight,
              const std::string& out_path, bool trace) {
  const Scenario scenario = scenario_from_json(read_json_file(scenario_path));
  MatchingDocument doc;
  doc.algorithm = algorithm;
  doc.user_weight_db_per_user = user_weight;
  doc.channel_seed = scenario.seed;
  if (params_path) {
    const ParamsFile params = load_params(*params_path);
    doc.channel = params.channel;
    if (params.seed) doc.channel_seed = *params.seed;
  }
  if (seed) doc.channel_seed = *seed;

  const auto caps = scenario.capacities();
  if (algorithm == "gale-shapley") {
    Rng rng(doc.channel_seed);
    const PathLossMatrix matrix = build_path_loss_matrix(scenario, doc.channel, rng);
    const PreferenceProfile profile = build_preferences(matrix, scenario.served_users(), user_weight);
    GaleShapleyOptions options;
    if (trace) options.trace = &std::cerr;
    doc.matching = gale_shapley(profile, caps, nullptr, options);
  } else {
    Rng rng(substream_seed(doc.channel_seed, kRandomMatchingStream));
    doc.matching = random_matching(rng, scenario.haps.size(), caps, scenario.uavs.size());
  }
  write_text_file(out_path, matching_to_json(doc).dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& scenario_path, const std::string& matching_path,
               const std::optional<std::string>& params_path) {
  const Scenario scenario = scenario_from_json(read_json_file(scenario_path));
  MatchingDocument doc = matching_from_json(read_json_file(matching_path), scenario.haps.size(), scenario.uavs.size());
  if (params_path) {
    const ParamsFile params = load_params(*params_path);
    doc.channel = params.channel;
    if (params.seed) doc.channel_seed = *params.seed;
    if (params.user_weight) doc.user_weight_db_per_user = *params.user_weight;
  }
  const auto caps = scenario.capacities();
  try {
    validate(doc.matching, caps);
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }

  Rng rng(doc.channel_seed);
  const PathLossMatrix matrix = build_path_loss_matrix(scenario, doc.channel, rng);
  const PreferenceProfile profile = build_preferences(matrix, scenario.served_users(), doc.user_weight_db_per_user);
  const auto blocking = find_blocking_pairs(doc.matching, profile, caps);
  for (const BlockingPair& bp : blocking) {
    std::cout << "BLOCKING " << bp.hap << ' ' << bp.uav << ' ' << to_string(bp.uav_reason) << ' '
              << to_string(bp.hap_reason) << '\n';
  }
  std::cout << (blocking.empty() ? "stable" : "unstable") << ": " << doc.matching.size() << " pairs, "
            << blocking.size() << " blocking\n";
  return blocking.empty() ? 0 : kExitUnstable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HAP-UAV stable matching simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path, scenario_path, params_path_str, matching_path;
  std::optional<std::string> out_dir, params_path;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool trace = false;
  bool timing = false;
  std::string algorithm = "gale-shapley";
  double user_weight = 1.0;

  auto* simulate = app.add_subcommand("simulate", "Run the Monte-Carlo comparison sweep");
  simulate->add_option("--config", config_path, "Experiment config (JSON)")->required();
  simulate->add_option("--out", out_dir, "Output directory for results.csv and summary.json");
  simulate->add_option("--trials", trials, "Trials per sweep point")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Master seed");
  simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");
  simulate->add_flag("--trace", trace, "Write the Gale-Shapley event trace to trace.log");
  simulate->add_flag("--timing", timing, "Record wall-clock runtimes (output no longer reproducible)");

  auto* gen = app.add_subcommand("gen-scenario", "Generate a scenario file");
  gen->add_option("--config", config_path, "Config with a scenario section")->required();
  gen->add_option("--out", out_path, "Scenario file to write")->required();
  gen->add_option("--seed", seed, "Override the scenario seed");

  auto* pathloss = app.add_subcommand("pathloss", "Emit the HAP x UAV path-loss matrix as CSV");
  pathloss->add_option("--scenario", scenario_path, "Scenario file")->required();
  pathloss->add_option("--params", params_path_str, "Channel parameters (JSON)")->required();
  pathloss->add_option("--out", out_path, "CSV to write")->required();

  auto* match = app.add_subcommand("match", "Compute a matching for a scenario");
  match->add_option("--scenario", scenario_path, "Scenario file")->required();
  match->add_option("--params", params_path, "Channel parameters (JSON)");
  match->add_option("--algorithm", algorithm, "gale-shapley or random")
      ->check(CLI::IsMember({"gale-shapley", "random"}));
  match->add_option("--seed", seed, "Channel seed (default: scenario seed)");
  match->add_option("--user-weight", user_weight, "HAP-side dB credit per served user")->check(CLI::NonNegativeNumber);
  match->add_option("--out", out_path, "Matching file to write")->required();
  match->add_flag("--trace", trace, "Print the Gale-Shapley event trace to stderr");

  auto* verify = app.add_subcommand("verify", "Check a matching for blocking pairs");
  verify->add_option("--scenario", scenario_path, "Scenario file")->required();
  verify->add_option("--matching", matching_path, "Matching file")->required();
  verify->add_option("--params", params_path, "Override the channel recorded in the matching file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, out_dir, trials, seed, trace, timing, threads);
    if (*gen) return cmd_gen_scenario(config_path, out_path, seed);
    if (*pathloss) return cmd_pathloss(scenario_path, params_path_str, out_path);
    if (*match) return cmd_match(scenario_path, params_path, algorithm, seed, user_weight, out_path, trace);
    if (*verify) return cmd_verify(scenario_path, matching_path, params_path);
  } catch (const StabilityError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ContractViolation& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
