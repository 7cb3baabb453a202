// Command-line front end: loads a benchmark snapshot, runs the selection /
// energy-model / scenario pipeline and writes machine-readable reports.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sufficiency/energy_model.hpp"
#include "sufficiency/hub_client.hpp"
#include "sufficiency/projection.hpp"
#include "sufficiency/report.hpp"
#include "sufficiency/scenario.hpp"
#include "sufficiency/selection.hpp"
#include "sufficiency/snapshot.hpp"

namespace {

using namespace sufficiency;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;

struct Options {
  std::string snapshot_path;
  std::string out_dir = ".";
  double delta = 0.05;
  std::string policy = "key_switch";
  std::string deltas = "0,0.05,0.1";
  std::string sweep_mode = "key_models";
  std::string weights = "downloads";
  std::string formats = "json,csv";
  std::string baseline_path;
  std::string save_snapshot_path;
  std::string hub_endpoint;
  bool refresh_usage = false;
  bool include_estimated = false;
};

std::vector<double> parse_deltas(const std::string& spec) {
  std::vector<double> out;
  std::string cur;
  std::stringstream ss(spec);
  while (std::getline(ss, cur, ',')) {
    if (cur.empty()) continue;
    out.push_back(std::stod(cur));
  }
  return out;
}

std::set<std::string> parse_formats(const std::string& spec) {
  std::set<std::string> out;
  std::string cur;
  std::stringstream ss(spec);
  while (std::getline(ss, cur, ',')) {
    if (cur == "json" || cur == "csv") out.insert(cur);
    else if (!cur.empty()) throw validation_error("unknown format '" + cur + "'");
  }
  if (out.empty()) throw validation_error("no output format selected");
  return out;
}

std::vector<TaskBenchmark> load_input(const Options& opt) {
  if (opt.snapshot_path.empty())
    throw validation_error("a snapshot is required (--snapshot PATH)");
  auto benchmarks = load_snapshot(opt.snapshot_path);
  if (opt.refresh_usage) {
    std::string endpoint = opt.hub_endpoint;
    if (endpoint.empty()) {
      const char* env = std::getenv("SUFFICIENCY_HUB_ENDPOINT");
      if (env) endpoint = env;
    }
    if (endpoint.empty())
      throw validation_error(
          "--refresh-usage needs --hub-endpoint or SUFFICIENCY_HUB_ENDPOINT");
    auto outcome = fetch_usage(std::move(benchmarks), endpoint, FetchMode::refresh);
    for (const auto& w : outcome.warnings)
      std::cerr << "warning: " << w.model_id << ": " << w.message << "\n";
    std::cerr << "refreshed downloads for " << outcome.refreshed << " of " << outcome.attempted
              << " hub models\n";
    benchmarks = std::move(outcome.benchmarks);
  }
  return benchmarks;
}

WeightPolicy weight_policy(const Options& opt) {
  if (opt.weights == "declared") return WeightPolicy::declared;
  if (opt.weights == "downloads") return WeightPolicy::sum_of_model_downloads;
  throw validation_error("unknown weights policy '" + opt.weights + "'");
}

std::optional<PowerLawFit> try_fit_task(const TaskBenchmark& bench, bool include_estimated) {
  auto pts = fit_points(bench, include_estimated);
  if (pts.size() < 2) return std::nullopt;
  bool distinct = false;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i].first != pts[0].first) distinct = true;
  if (!distinct) return std::nullopt;
  return fit_power_law(pts, bench.task_id);
}

// Fills missing energies from the task's own measured fit where one exists;
// tasks that stay incomplete surface later as per-model errors.
std::vector<TaskBenchmark> impute_where_possible(std::vector<TaskBenchmark> benchmarks,
                                                 bool include_estimated) {
  for (auto& bench : benchmarks) {
    bool missing = false;
    for (const auto& m : bench.models)
      if (!m.energy_j) missing = true;
    if (!missing) continue;
    if (auto fit = try_fit_task(bench, include_estimated)) bench = impute_energies(bench, *fit);
  }
  return benchmarks;
}

void ensure_out_dir(const Options& opt) {
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) throw io_error("cannot create output directory '" + opt.out_dir + "'");
}

int cmd_validate(const Options& opt) {
  auto benchmarks = load_input(opt);
  std::size_t n_models = 0, estimated_params = 0, estimated_energy = 0, missing_energy = 0;
  for (const auto& t : benchmarks) {
    n_models += t.models.size();
    for (const auto& m : t.models) {
      if (m.params_source == ParamsSource::estimated) ++estimated_params;
      if (m.energy_source == EnergySource::estimated) ++estimated_energy;
      if (!m.energy_j) ++missing_energy;
    }
  }
  if (!opt.save_snapshot_path.empty())
    save_snapshot(benchmarks, opt.save_snapshot_path,
                  snapshot_format_for_path(opt.save_snapshot_path));
  std::cout << "snapshot OK: " << benchmarks.size() << " tasks, " << n_models << " models ("
            << estimated_params << " with estimated params, " << estimated_energy
            << " with estimated energy, " << missing_energy << " without energy)\n";
  return kExitOk;
}

int cmd_frontier(const Options& opt) {
  auto benchmarks = load_input(opt);
  ensure_out_dir(opt);
  write_artifact(opt.out_dir, "frontier.csv", frontier_csv(benchmarks));
  std::cout << "wrote " << opt.out_dir << "/frontier.csv\n";
  return kExitOk;
}

int cmd_fit(const Options& opt) {
  auto benchmarks = load_input(opt);
  ensure_out_dir(opt);
  std::vector<PowerLawFit> fits;
  for (const auto& bench : benchmarks) {
    if (auto fit = try_fit_task(bench, opt.include_estimated)) {
      if (!fit->within_reference_envelope())
        std::cerr << "note: fit for task '" << bench.task_id
                  << "' is outside the reference envelope (alpha=" << format_g6(fit->alpha)
                  << ", beta=" << format_g6(fit->beta) << ")\n";
      fits.push_back(*fit);
    } else {
      std::cerr << "note: task '" << bench.task_id
                << "' skipped (needs >= 2 energy points with distinct params)\n";
    }
  }
  write_artifact(opt.out_dir, "fits.json", fits_json(fits));
  std::cout << "wrote " << opt.out_dir << "/fits.json (" << fits.size() << " fits)\n";
  return kExitOk;
}

int cmd_select(const Options& opt) {
  auto benchmarks = load_input(opt);
  ensure_out_dir(opt);
  std::vector<KeyModelPair> pairs;
  pairs.reserve(benchmarks.size());
  for (const auto& bench : benchmarks) pairs.push_back(select_key_models(bench, opt.delta));
  auto formats = parse_formats(opt.formats);
  if (formats.count("csv")) {
    write_artifact(opt.out_dir, "select.csv", key_models_csv(benchmarks, pairs));
    std::cout << "wrote " << opt.out_dir << "/select.csv\n";
  }
  if (formats.count("json")) {
    write_artifact(opt.out_dir, "select.json", key_models_json(pairs));
    std::cout << "wrote " << opt.out_dir << "/select.json\n";
  }
  return kExitOk;
}

int cmd_savings(const Options& opt) {
  auto benchmarks = impute_where_possible(load_input(opt), opt.include_estimated);
  ensure_out_dir(opt);
  Policy policy = policy_from_string(opt.policy);
  std::vector<ScenarioResult> results;
  for (const auto& bench : benchmarks) {
    KeyModelPair pair = select_key_models(bench, opt.delta);
    results.push_back(policy == Policy::key_switch ? run_key_switch(bench, pair)
                                                   : run_redirect(bench, pair, policy));
  }
  auto weights = task_weights(benchmarks, weight_policy(opt));
  auto [er_global, uv_global] = aggregate_weighted(results, weights);
  write_artifact(opt.out_dir, "savings.json",
                 savings_json(results, er_global, uv_global, policy, opt.delta));
  std::cout << "wrote " << opt.out_dir << "/savings.json (er_global=" << format_g6(er_global)
            << ", uv_global=" << format_g6(uv_global) << ")\n";
  return kExitOk;
}

int cmd_sweep(const Options& opt) {
  auto benchmarks = impute_where_possible(load_input(opt), opt.include_estimated);
  ensure_out_dir(opt);
  SweepMode mode;
  if (opt.sweep_mode == "key_models") mode = SweepMode::key_models;
  else if (opt.sweep_mode == "all_models") mode = SweepMode::all_models;
  else throw validation_error("unknown sweep mode '" + opt.sweep_mode + "'");
  auto weights = task_weights(benchmarks, weight_policy(opt));
  auto points = sweep_utility_drop(benchmarks, parse_deltas(opt.deltas), mode, weights);
  write_artifact(opt.out_dir, "sweep.csv", sweep_csv(points));
  std::cout << "wrote " << opt.out_dir << "/sweep.csv (" << points.size() << " thresholds)\n";
  return kExitOk;
}

int cmd_project(const Options& opt) {
  if (opt.baseline_path.empty())
    throw validation_error("project needs a baseline config (--baseline PATH)");
  ProjectionConfig cfg = load_projection_config(opt.baseline_path);
  ensure_out_dir(opt);
  auto series = project_consumption(cfg);
  write_artifact(opt.out_dir, "projection.csv", projection_csv(series));
  int last_year = cfg.baseline.rbegin()->first;
  double saving = series[0].points.at(last_year).high - series[1].points.at(last_year).high;
  std::cout << "wrote " << opt.out_dir << "/projection.csv\n";
  std::cout << "sobriety saving in " << last_year << ": " << format_g6(saving) << " TWh (~"
            << format_g6(reactor_equivalents(saving, cfg)) << " reactors)\n";
  return kExitOk;
}

int cmd_report(const Options& opt) {
  auto benchmarks = impute_where_possible(load_input(opt), opt.include_estimated);
  ensure_out_dir(opt);

  write_artifact(opt.out_dir, "frontier.csv", frontier_csv(benchmarks));

  std::vector<PowerLawFit> fits;
  for (const auto& bench : benchmarks)
    if (auto fit = try_fit_task(bench, opt.include_estimated)) fits.push_back(*fit);
  write_artifact(opt.out_dir, "fits.json", fits_json(fits));

  std::vector<KeyModelPair> pairs;
  std::vector<ScenarioResult> results;
  Policy policy = policy_from_string(opt.policy);
  for (const auto& bench : benchmarks) {
    KeyModelPair pair = select_key_models(bench, opt.delta);
    results.push_back(policy == Policy::key_switch ? run_key_switch(bench, pair)
                                                   : run_redirect(bench, pair, policy));
    pairs.push_back(std::move(pair));
  }
  write_artifact(opt.out_dir, "select.csv", key_models_csv(benchmarks, pairs));
  write_artifact(opt.out_dir, "select.json", key_models_json(pairs));

  auto weights = task_weights(benchmarks, weight_policy(opt));
  auto [er_global, uv_global] = aggregate_weighted(results, weights);
  write_artifact(opt.out_dir, "savings.json",
                 savings_json(results, er_global, uv_global, policy, opt.delta));

  SweepMode mode = opt.sweep_mode == "all_models" ? SweepMode::all_models : SweepMode::key_models;
  auto sweep = sweep_utility_drop(benchmarks, parse_deltas(opt.deltas), mode, weights);
  write_artifact(opt.out_dir, "sweep.csv", sweep_csv(sweep));

  nlohmann::json summary;
  summary["snapshot"] = opt.snapshot_path;
  summary["tasks"] = benchmarks.size();
  summary["delta"] = round_g6(opt.delta);
  summary["policy"] = opt.policy;
  summary["er_global"] = round_g6(er_global);
  summary["uv_global"] = round_g6(uv_global);
  summary["artifacts"] = {"frontier.csv", "fits.json", "select.csv",
                          "select.json", "savings.json", "sweep.csv"};

  if (!opt.baseline_path.empty()) {
    ProjectionConfig cfg = load_projection_config(opt.baseline_path);
    write_artifact(opt.out_dir, "projection.csv", projection_csv(project_consumption(cfg)));
    summary["artifacts"].push_back("projection.csv");
  }
  write_artifact(opt.out_dir, "report.json", summary.dump(2) + "\n");
  std::cout << "report written to " << opt.out_dir << " (er_global=" << format_g6(er_global)
            << ", uv_global=" << format_g6(uv_global) << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware AI model selection toolkit"};
  app.fallthrough();
  Options opt;

  app.add_option("--snapshot", opt.snapshot_path, "Benchmark snapshot file (.json or .csv)");
  app.add_option("--out", opt.out_dir, "Output directory for artifacts");
  app.add_option("--delta", opt.delta, "Maximum utility drop for the efficient model")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--policy", opt.policy,
                 "key_switch | redirect_to_efficient | redirect_to_best");
  app.add_option("--deltas", opt.deltas, "Comma-separated sweep thresholds, ascending");
  app.add_option("--sweep-mode", opt.sweep_mode, "key_models | all_models");
  app.add_option("--weights", opt.weights, "Task weights: declared | downloads");
  app.add_option("--format", opt.formats, "Artifact formats: json,csv");
  app.add_option("--baseline", opt.baseline_path, "Projection config JSON");
  app.add_option("--save-snapshot", opt.save_snapshot_path, "Write the loaded snapshot back out");
  app.add_option("--hub-endpoint", opt.hub_endpoint,
                 "Model hub API endpoint (else SUFFICIENCY_HUB_ENDPOINT)");
  app.add_flag("--refresh-usage", opt.refresh_usage, "Refresh download counts from the hub API");
  app.add_flag("--include-estimated", opt.include_estimated,
               "Let already-estimated energies back into fitting inputs");

  app.require_subcommand(0, 1);
  auto* validate_cmd = app.add_subcommand("validate", "Load a snapshot and check its invariants");
  auto* frontier_cmd = app.add_subcommand("frontier", "Per-task Pareto frontier CSV");
  auto* fit_cmd = app.add_subcommand("fit", "Per-task power-law energy fits JSON");
  auto* select_cmd = app.add_subcommand("select", "Key-model table per task");
  auto* savings_cmd = app.add_subcommand("savings", "Scenario energy/utility report");
  auto* sweep_cmd = app.add_subcommand("sweep", "Energy reduction across drop thresholds");
  auto* project_cmd = app.add_subcommand("project", "Multi-year consumption projection CSV");
  auto* report_cmd = app.add_subcommand("report", "All artifacts in one run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(opt);
    if (frontier_cmd->parsed()) return cmd_frontier(opt);
    if (fit_cmd->parsed()) return cmd_fit(opt);
    if (select_cmd->parsed()) return cmd_select(opt);
    if (savings_cmd->parsed()) return cmd_savings(opt);
    if (sweep_cmd->parsed()) return cmd_sweep(opt);
    if (project_cmd->parsed()) return cmd_project(opt);
    if (report_cmd->parsed()) return cmd_report(opt);
    std::cerr << "no command given\n\n" << app.help();
    return kExitUsage;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
