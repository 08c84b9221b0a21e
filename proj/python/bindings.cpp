#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/operators.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "hapmatch/channel.hpp"
#include "hapmatch/errors.hpp"
#include "hapmatch/geo.hpp"
#include "hapmatch/harness.hpp"
#include "hapmatch/matching.hpp"
#include "hapmatch/prefscore.hpp"
#include "hapmatch/scenario.hpp"
#include "hapmatch/serialization.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace hapmatch;

namespace {

template <typename T>
std::pair<T, T> to_pair(const Interval<T>& i) {
  return {i.lo, i.hi};
}

template <typename T>
Interval<T> from_pair(const std::pair<T, T>& p) {
  return {p.first, p.second};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "HAP-UAV stable matching: channel model, preferences, Gale-Shapley and experiment harness";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<StabilityError>(m, "StabilityError", PyExc_RuntimeError);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform01", &Rng::uniform01)
      .def("standard_normal", &Rng::standard_normal);

  py::class_<GeoPoint>(m, "GeoPoint")
      .def(py::init<>())
      .def(py::init([](double x, double y, double alt) { return GeoPoint{x, y, alt}; }), py::arg("x"), py::arg("y"),
           py::arg("alt"))
      .def_readwrite("x", &GeoPoint::x)
      .def_readwrite("y", &GeoPoint::y)
      .def_readwrite("alt", &GeoPoint::alt)
      .def(py::self == py::self)
      .def("__repr__", [](const GeoPoint& p) {
        std::ostringstream ss;
        ss << "GeoPoint(" << p.x << ", " << p.y << ", " << p.alt << ")";
        return ss.str();
      });
  m.def("distance_3d", &distance_3d, py::arg("a"), py::arg("b"));

  py::class_<Hap>(m, "Hap")
      .def(py::init([](HapId id, GeoPoint pos, int capacity) { return Hap{id, pos, capacity}; }), py::arg("id"),
           py::arg("pos"), py::arg("capacity") = 5)
      .def_readwrite("id", &Hap::id)
      .def_readwrite("pos", &Hap::pos)
      .def_readwrite("capacity", &Hap::capacity);

  py::class_<Uav>(m, "Uav")
      .def(py::init([](UavId id, GeoPoint pos, int users) { return Uav{id, pos, users}; }), py::arg("id"),
           py::arg("pos"), py::arg("served_users") = 0)
      .def_readwrite("id", &Uav::id)
      .def_readwrite("pos", &Uav::pos)
      .def_readwrite("served_users", &Uav::served_users);

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("haps", &Scenario::haps)
      .def_readwrite("uavs", &Scenario::uavs)
      .def_readwrite("seed", &Scenario::seed)
      .def("capacities", &Scenario::capacities)
      .def("served_users", &Scenario::served_users)
      .def("to_json", [](const Scenario& s) { return scenario_to_json(s).dump(); })
      .def_static("from_json", [](const std::string& text) { return scenario_from_json(Json::parse(text)); })
      .def(py::self == py::self);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("n_haps", &ScenarioConfig::n_haps)
      .def_readwrite("m_uavs", &ScenarioConfig::m_uavs)
      .def_readwrite("hap_capacity", &ScenarioConfig::hap_capacity)
      .def_readwrite("area_side_km", &ScenarioConfig::area_side_km)
      .def_property(
          "hap_alt_range_km", [](const ScenarioConfig& c) { return to_pair(c.hap_alt_range_km); },
          [](ScenarioConfig& c, std::pair<double, double> p) { c.hap_alt_range_km = from_pair(p); })
      .def_property(
          "uav_alt_range_km", [](const ScenarioConfig& c) { return to_pair(c.uav_alt_range_km); },
          [](ScenarioConfig& c, std::pair<double, double> p) { c.uav_alt_range_km = from_pair(p); })
      .def_property(
          "users_range", [](const ScenarioConfig& c) { return to_pair(c.users_range); },
          [](ScenarioConfig& c, std::pair<int, int> p) { c.users_range = from_pair(p); })
      .def_readwrite("seed", &ScenarioConfig::seed);
  m.def("generate_scenario", &generate_scenario, py::arg("config"));

  py::class_<ChannelParams>(m, "ChannelParams")
      .def(py::init<>())
      .def_readwrite("carrier_freq_ghz", &ChannelParams::carrier_freq_ghz)
      .def_readwrite("atmospheric_loss_db", &ChannelParams::atmospheric_loss_db)
      .def_readwrite("scintillation_loss_db", &ChannelParams::scintillation_loss_db)
      .def_readwrite("clutter_loss_db", &ChannelParams::clutter_loss_db)
      .def_readwrite("shadow_fading_variance_db2", &ChannelParams::shadow_fading_variance_db2)
      .def_readwrite("elevation_angle_deg", &ChannelParams::elevation_angle_deg);

  m.def("fspl", &fspl, py::arg("d_km"), py::arg("f_ghz"));
  m.def("basic_path_loss", &basic_path_loss, py::arg("d_km"), py::arg("f_ghz"), py::arg("shadow_fading_db"),
        py::arg("clutter_loss_db"));
  m.def("total_path_loss", &total_path_loss, py::arg("pl_b_db"), py::arg("pl_g_db"), py::arg("pl_s_db"));
  m.def("sample_shadow_fading", &sample_shadow_fading, py::arg("rng"), py::arg("variance_db2"));

  py::class_<PathLossMatrix>(m, "PathLossMatrix")
      .def(py::init([](std::size_t n, std::size_t mu, std::vector<double> values) {
             return PathLossMatrix(n, mu, std::move(values));
           }),
           py::arg("n_haps"), py::arg("m_uavs"), py::arg("loss_db"))
      .def_property_readonly("n_haps", &PathLossMatrix::n_haps)
      .def_property_readonly("m_uavs", &PathLossMatrix::m_uavs)
      .def("at", py::overload_cast<HapId, UavId>(&PathLossMatrix::at, py::const_), py::arg("hap"), py::arg("uav"))
      .def("shadow_fading", &PathLossMatrix::shadow_fading, py::arg("hap"), py::arg("uav"))
      .def("values", &PathLossMatrix::values);
  m.def(
      "build_path_loss_matrix",
      [](const Scenario& s, const ChannelParams& p, std::uint64_t seed) {
        Rng rng(seed);
        return build_path_loss_matrix(s, p, rng);
      },
      py::arg("scenario"), py::arg("params"), py::arg("seed"));

  py::class_<PreferenceProfile>(m, "PreferenceProfile")
      .def(py::init<>())
      .def_readwrite("hap_prefs", &PreferenceProfile::hap_prefs)
      .def_readwrite("uav_prefs", &PreferenceProfile::uav_prefs)
      .def_readwrite("user_weight_db_per_user", &PreferenceProfile::user_weight_db_per_user);
  m.def("hap_preference_key", &hap_preference_key, py::arg("loss_db"), py::arg("served_users"),
        py::arg("user_weight"));
  m.def(
      "build_preferences",
      [](const PathLossMatrix& matrix, const std::vector<int>& users, double w) {
        return build_preferences(matrix, users, w);
      },
      py::arg("matrix"), py::arg("served_users"), py::arg("user_weight") = 1.0);

  py::class_<ScoreReport>(m, "ScoreReport")
      .def_readonly("per_match_scores", &ScoreReport::per_match_scores)
      .def_readonly("mean_score", &ScoreReport::mean_score)
      .def_readonly("matched_count", &ScoreReport::matched_count)
      .def_readonly("unmatched_uavs", &ScoreReport::unmatched_uavs);

  py::class_<Matching>(m, "Matching")
      .def(py::init<std::size_t, std::size_t>(), py::arg("n_haps"), py::arg("m_uavs"))
      .def("assign", &Matching::assign, py::arg("uav"), py::arg("hap"))
      .def("unassign", &Matching::unassign, py::arg("uav"))
      .def("hap_of", &Matching::hap_of, py::arg("uav"))
      .def("load", &Matching::load, py::arg("hap"))
      .def("pairs", &Matching::pairs)
      .def("__len__", &Matching::size)
      .def(py::self == py::self);
  m.def(
      "score_matching",
      [](const Matching& mt, const PathLossMatrix& matrix, const std::vector<int>& users, double w) {
        return score_matching(mt, matrix, users, w);
      },
      py::arg("matching"), py::arg("matrix"), py::arg("served_users"), py::arg("user_weight") = 1.0);

  py::enum_<BlockingReason>(m, "BlockingReason")
      .value("uav_unmatched", BlockingReason::uav_unmatched)
      .value("uav_prefers", BlockingReason::uav_prefers)
      .value("hap_has_free_slot", BlockingReason::hap_has_free_slot)
      .value("hap_prefers_over_worst", BlockingReason::hap_prefers_over_worst);

  py::class_<BlockingPair>(m, "BlockingPair")
      .def_readonly("hap", &BlockingPair::hap)
      .def_readonly("uav", &BlockingPair::uav)
      .def_readonly("uav_reason", &BlockingPair::uav_reason)
      .def_readonly("hap_reason", &BlockingPair::hap_reason);

  m.def(
      "gale_shapley",
      [](const PreferenceProfile& p, const std::vector<int>& caps) {
        GaleShapleyStats stats;
        Matching result = gale_shapley(p, caps, &stats);
        return py::make_tuple(std::move(result), stats.proposals);
      },
      py::arg("profile"), py::arg("capacities"),
      "Returns (matching, proposals) for HAP-proposing deferred acceptance.");
  m.def(
      "random_matching",
      [](std::uint64_t seed, std::size_t n, const std::vector<int>& caps, std::size_t mu) {
        Rng rng(seed);
        return random_matching(rng, n, caps, mu);
      },
      py::arg("seed"), py::arg("n_haps"), py::arg("capacities"), py::arg("m_uavs"));
  m.def(
      "find_blocking_pairs",
      [](const Matching& mt, const PreferenceProfile& p, const std::vector<int>& caps) {
        return find_blocking_pairs(mt, p, caps);
      },
      py::arg("matching"), py::arg("profile"), py::arg("capacities"));
  m.def(
      "enumerate_stable_matchings",
      [](const PreferenceProfile& p, const std::vector<int>& caps) { return enumerate_stable_matchings(p, caps); },
      py::arg("profile"), py::arg("capacities"));

  py::class_<TrialResult>(m, "TrialResult")
      .def_readonly("sweep_point", &TrialResult::sweep_point)
      .def_readonly("n_haps", &TrialResult::n_haps)
      .def_readonly("m_uavs", &TrialResult::m_uavs)
      .def_readonly("trial_index", &TrialResult::trial_index)
      .def_readonly("trial_seed", &TrialResult::trial_seed)
      .def_readonly("gs_mean_score", &TrialResult::gs_mean_score)
      .def_readonly("random_mean_score", &TrialResult::random_mean_score)
      .def_readonly("score_gap", &TrialResult::score_gap)
      .def_readonly("gs_matched_count", &TrialResult::gs_matched_count)
      .def_readonly("gs_proposals", &TrialResult::gs_proposals)
      .def_readonly("gs_runtime_ms", &TrialResult::gs_runtime_ms)
      .def_readonly("random_runtime_ms", &TrialResult::random_runtime_ms);
  m.def(
      "run_trial",
      [](const Scenario& s, const ChannelParams& c, double w, std::uint64_t seed) { return run_trial(s, c, w, seed); },
      py::arg("scenario"), py::arg("channel"), py::arg("user_weight"), py::arg("trial_seed"));
  m.def("derive_trial_seed", &derive_trial_seed, py::arg("master_seed"), py::arg("point_index"),
        py::arg("trial_index"));

  py::class_<PointSummary>(m, "PointSummary")
      .def_readonly("sweep_point", &PointSummary::sweep_point)
      .def_readonly("n_haps", &PointSummary::n_haps)
      .def_readonly("m_uavs", &PointSummary::m_uavs)
      .def_readonly("trials", &PointSummary::trials)
      .def_readonly("gs_mean", &PointSummary::gs_mean)
      .def_readonly("gs_std", &PointSummary::gs_std)
      .def_readonly("random_mean", &PointSummary::random_mean)
      .def_readonly("random_std", &PointSummary::random_std)
      .def_readonly("gap_mean", &PointSummary::gap_mean)
      .def_readonly("gap_std", &PointSummary::gap_std)
      .def_readonly("gap_stderr", &PointSummary::gap_stderr);

  py::class_<ExperimentResult>(m, "ExperimentResult")
      .def_readonly("trials", &ExperimentResult::trials)
      .def_readonly("summary", &ExperimentResult::summary);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_static(
          "from_json", [](const std::string& text) { return experiment_config_from_json(Json::parse(text)); })
      .def_readwrite("scenario", &ExperimentConfig::scenario)
      .def_property(
          "sweep",
          [](const ExperimentConfig& c) {
            std::vector<std::pair<std::size_t, std::size_t>> out;
            for (const auto& p : c.sweep) out.emplace_back(p.n_haps, p.m_uavs);
            return out;
          },
          [](ExperimentConfig& c, const std::vector<std::pair<std::size_t, std::size_t>>& pts) {
            c.sweep.clear();
            for (const auto& [n, mu] : pts) c.sweep.push_back({n, mu});
          })
      .def_readwrite("channel", &ExperimentConfig::channel)
      .def_readwrite("user_weight_db_per_user", &ExperimentConfig::user_weight_db_per_user)
      .def_readwrite("trials_per_point", &ExperimentConfig::trials_per_point)
      .def_readwrite("master_seed", &ExperimentConfig::master_seed)
      .def_readwrite("output_path", &ExperimentConfig::output_path)
      .def_readwrite("record_runtime", &ExperimentConfig::record_runtime)
      .def_readwrite("threads", &ExperimentConfig::threads);
  m.def("run_experiment", &run_experiment, py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def(
      "results_csv",
      [](const ExperimentResult& r, bool record_runtime) {
        std::ostringstream out;
        write_results_csv(out, r.trials, record_runtime);
        return out.str();
      },
      py::arg("result"), py::arg("record_runtime") = false);

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
