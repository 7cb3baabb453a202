#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sufficiency/energy_model.hpp"
#include "sufficiency/projection.hpp"
#include "sufficiency/scenario.hpp"
#include "sufficiency/selection.hpp"
#include "sufficiency/snapshot.hpp"
#include "sufficiency/types.hpp"

namespace sufficiency {

// All report artifacts carry floats at 6 significant digits so golden-file
// comparisons stay stable.
inline std::string format_g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Same rounding for JSON artifacts: the value is passed through its 6-digit
// text form so the serializer emits exactly that many digits.
inline double round_g6(double v) {
  return std::stod(format_g6(v));
}

namespace detail {

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error("cannot write artifact '" + path + "'");
  os << content;
  if (!os) throw io_error("write failed for artifact '" + path + "'");
}

}  // namespace detail

inline std::string frontier_csv(const std::vector<TaskBenchmark>& benchmarks) {
  std::string out = "task_id,model_id,params,goodness\n";
  for (const auto& bench : benchmarks) {
    for (const auto& p : pareto_frontier(bench)) {
      out += detail::csv_escape(bench.task_id) + ',' + detail::csv_escape(p.id) + ',' +
             std::to_string(p.params) + ',' + format_g6(p.goodness) + '\n';
    }
  }
  return out;
}

inline nlohmann::json fit_to_json(const PowerLawFit& fit) {
  nlohmann::json j;
  j["task_id"] = fit.task_id;
  j["alpha"] = round_g6(fit.alpha);
  j["beta"] = round_g6(fit.beta);
  j["n_points"] = fit.n_points;
  j["r2"] = round_g6(fit.r2);
  return j;
}

inline std::string fits_json(const std::vector<PowerLawFit>& fits) {
  nlohmann::json root = nlohmann::json::array();
  for (const auto& f : fits) root.push_back(fit_to_json(f));
  return root.dump(2) + "\n";
}

// One row per task, mirroring the published key-model table: identity,
// size, utility, energy and usage of both key models plus the realized drop.
inline std::string key_models_csv(const std::vector<TaskBenchmark>& benchmarks,
                                  const std::vector<KeyModelPair>& pairs) {
  std::string out =
      "task_id,best_id,best_params,best_utility,best_energy_j,best_downloads,"
      "efficient_id,efficient_params,efficient_utility,efficient_energy_j,efficient_downloads,"
      "realized_drop,fallback_used\n";
  for (std::size_t i = 0; i < benchmarks.size(); ++i) {
    const auto& bench = benchmarks[i];
    const auto& pair = pairs[i];
    const ModelRecord* best = bench.find_model(pair.best);
    const ModelRecord* efficient = bench.find_model(pair.efficient);
    auto energy = [](const ModelRecord* m) {
      return m->energy_j ? format_g6(*m->energy_j) : std::string();
    };
    out += detail::csv_escape(bench.task_id) + ',' + detail::csv_escape(best->id) + ',' +
           std::to_string(best->params) + ',' + format_g6(best->utility) + ',' + energy(best) +
           ',' + std::to_string(best->downloads) + ',' + detail::csv_escape(efficient->id) + ',' +
           std::to_string(efficient->params) + ',' + format_g6(efficient->utility) + ',' +
           energy(efficient) + ',' + std::to_string(efficient->downloads) + ',' +
           format_g6(pair.realized_drop) + ',' + (pair.fallback_used ? "true" : "false") + '\n';
  }
  return out;
}

inline nlohmann::json key_model_pair_to_json(const KeyModelPair& pair) {
  nlohmann::json j;
  j["task_id"] = pair.task_id;
  j["best"] = pair.best;
  j["efficient"] = pair.efficient;
  j["threshold_delta"] = round_g6(pair.threshold_delta);
  j["realized_drop"] = round_g6(pair.realized_drop);
  j["fallback_used"] = pair.fallback_used;
  return j;
}

inline std::string key_models_json(const std::vector<KeyModelPair>& pairs) {
  nlohmann::json root = nlohmann::json::array();
  for (const auto& p : pairs) root.push_back(key_model_pair_to_json(p));
  return root.dump(2) + "\n";
}

inline nlohmann::json scenario_result_to_json(const ScenarioResult& r) {
  nlohmann::json j;
  j["task_id"] = r.task_id;
  j["policy"] = to_string(r.policy);
  j["e_before_j"] = round_g6(r.e_before);
  j["e_after_j"] = round_g6(r.e_after);
  j["er"] = round_g6(r.er);
  j["u_before"] = round_g6(r.u_before);
  j["u_after"] = round_g6(r.u_after);
  j["uv"] = round_g6(r.uv);
  return j;
}

inline std::string savings_json(const std::vector<ScenarioResult>& results, double er_global,
                                double uv_global, Policy policy, double delta) {
  nlohmann::json root;
  root["policy"] = to_string(policy);
  root["delta"] = round_g6(delta);
  root["results"] = nlohmann::json::array();
  for (const auto& r : results) root["results"].push_back(scenario_result_to_json(r));
  root["aggregate"] = {{"er_global", round_g6(er_global)}, {"uv_global", round_g6(uv_global)}};
  return root.dump(2) + "\n";
}

inline std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "delta,er_global,uv_global\n";
  for (const auto& p : points)
    out += format_g6(p.delta) + ',' + format_g6(p.er_global) + ',' + format_g6(p.uv_global) + '\n';
  return out;
}

inline std::string projection_csv(const std::vector<ProjectionSeries>& series) {
  std::string out = "year,scenario,low_twh,high_twh\n";
  for (const auto& s : series) {
    for (const auto& [year, bounds] : s.points) {
      out += std::to_string(year) + ',' + to_string(s.scenario) + ',' + format_g6(bounds.low) +
             ',' + format_g6(bounds.high) + '\n';
    }
  }
  return out;
}

// Projection config file: {"baseline_kind": ..., "baseline": {"2025": [low, high], ...},
// optional fractions/rates/transition/twh_per_reactor}.
inline ProjectionConfig load_projection_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open projection config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error("projection config parse failure in '" + path + "': " + e.what());
  }
  ProjectionConfig cfg;
  if (!j.contains("baseline") || !j.at("baseline").is_object())
    throw validation_error("projection config needs a 'baseline' object of year -> [low, high]");
  for (const auto& [year_str, bounds] : j.at("baseline").items()) {
    int year = 0;
    try {
      year = std::stoi(year_str);
    } catch (const std::exception&) {
      throw validation_error("projection config: bad year key '" + year_str + "'");
    }
    if (bounds.is_array() && bounds.size() == 2)
      cfg.baseline[year] = {bounds[0].get<double>(), bounds[1].get<double>()};
    else if (bounds.is_number())
      cfg.baseline[year] = {bounds.get<double>(), bounds.get<double>()};
    else
      throw validation_error("projection config: baseline for " + year_str +
                             " must be a number or [low, high]");
  }
  if (j.contains("baseline_kind"))
    cfg.baseline_kind = baseline_kind_from_string(j.at("baseline_kind").get<std::string>());
  if (j.contains("ai_fraction")) cfg.ai_fraction = j.at("ai_fraction").get<double>();
  if (j.contains("inference_fraction"))
    cfg.inference_fraction = j.at("inference_fraction").get<double>();
  if (j.contains("savings_rate")) cfg.savings_rate = j.at("savings_rate").get<double>();
  if (j.contains("increase_rate")) cfg.increase_rate = j.at("increase_rate").get<double>();
  if (j.contains("transition_start")) cfg.transition_start = j.at("transition_start").get<int>();
  if (j.contains("transition_end")) cfg.transition_end = j.at("transition_end").get<int>();
  if (j.contains("twh_per_reactor")) cfg.twh_per_reactor = j.at("twh_per_reactor").get<double>();
  validate(cfg);
  return cfg;
}

inline void write_artifact(const std::string& dir, const std::string& name,
                           const std::string& content) {
  detail::write_text_file(dir + "/" + name, content);
}

}  // namespace sufficiency
