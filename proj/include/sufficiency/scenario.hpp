#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "sufficiency/selection.hpp"
#include "sufficiency/types.hpp"

namespace sufficiency {

enum class Policy { key_switch, redirect_to_efficient, redirect_to_best };

inline std::string to_string(Policy p) {
  switch (p) {
    case Policy::key_switch: return "key_switch";
    case Policy::redirect_to_efficient: return "redirect_to_efficient";
    case Policy::redirect_to_best: return "redirect_to_best";
  }
  return "key_switch";
}

inline Policy policy_from_string(std::string_view s) {
  if (s == "key_switch") return Policy::key_switch;
  if (s == "redirect_to_efficient") return Policy::redirect_to_efficient;
  if (s == "redirect_to_best") return Policy::redirect_to_best;
  throw validation_error("unknown policy: '" + std::string(s) + "'");
}

// Before/after energy and utility of one task under one policy. er is the
// energy reduction fraction, uv the signed utility variation, both relative
// to the before state.
struct ScenarioResult {
  std::string task_id;
  Policy policy = Policy::key_switch;
  double e_before = 0.0;
  double e_after = 0.0;
  double er = 0.0;
  double u_before = 0.0;
  double u_after = 0.0;
  double uv = 0.0;
};

namespace detail {

inline double require_energy(const TaskBenchmark& bench, const std::string& model_id) {
  const ModelRecord* m = bench.find_model(model_id);
  if (!m)
    throw validation_error("model '" + model_id + "' not found in task '" + bench.task_id + "'");
  if (!m->energy_j)
    throw validation_error("model '" + model_id + "' has no energy value (measure or impute first)");
  return *m->energy_j;
}

inline ScenarioResult finish(ScenarioResult r) {
  r.er = (r.e_before - r.e_after) / r.e_before;
  r.uv = (r.u_after - r.u_before) / r.u_before;
  return r;
}

}  // namespace detail

// Moving the task's whole workload from the best-performing model to the
// energy-efficient one. Usage-independent.
inline ScenarioResult run_key_switch(const TaskBenchmark& bench, const KeyModelPair& pair) {
  ScenarioResult r;
  r.task_id = bench.task_id;
  r.policy = Policy::key_switch;
  r.e_before = detail::require_energy(bench, pair.best);
  r.e_after = detail::require_energy(bench, pair.efficient);
  r.u_before = goodness(*bench.find_model(pair.best), bench);
  r.u_after = goodness(*bench.find_model(pair.efficient), bench);
  return detail::finish(r);
}

// Download-weighted redirection. redirect_to_efficient moves the usage of
// every model larger than the efficient one onto it (equal-size models stay
// put); redirect_to_best moves all usage onto the best model. Utilities are
// download-weighted mean goodness before/after.
inline ScenarioResult run_redirect(const TaskBenchmark& bench, const KeyModelPair& pair,
                                   Policy policy) {
  if (policy == Policy::key_switch)
    throw validation_error("run_redirect: policy must be a redirect policy");
  ScenarioResult r;
  r.task_id = bench.task_id;
  r.policy = policy;

  const ModelRecord* target = bench.find_model(
      policy == Policy::redirect_to_efficient ? pair.efficient : pair.best);
  if (!target)
    throw validation_error("key model not found in task '" + bench.task_id + "'");
  double target_energy = detail::require_energy(bench, target->id);
  double target_goodness = goodness(*target, bench);

  double total_downloads = 0.0;
  double moved_downloads = 0.0;
  double u_before_weighted = 0.0;
  double u_kept_weighted = 0.0;
  double e_kept = 0.0;
  for (const auto& m : bench.models) {
    double d = static_cast<double>(m.downloads);
    double e = detail::require_energy(bench, m.id);
    double g = goodness(m, bench);
    total_downloads += d;
    r.e_before += d * e;
    u_before_weighted += d * g;
    bool moved = policy == Policy::redirect_to_best ? true : m.params > target->params;
    if (moved) {
      moved_downloads += d;
    } else {
      e_kept += d * e;
      u_kept_weighted += d * g;
    }
  }
  if (total_downloads <= 0.0)
    throw validation_error("run_redirect: task '" + bench.task_id + "' has zero total downloads");

  r.e_after = e_kept + moved_downloads * target_energy;
  r.u_before = u_before_weighted / total_downloads;
  r.u_after = (u_kept_weighted + moved_downloads * target_goodness) / total_downloads;
  return detail::finish(r);
}

// Usage-weighted mean of per-task energy reductions and utility variations.
inline std::pair<double, double> aggregate_weighted(const std::vector<ScenarioResult>& results,
                                                    const std::map<std::string, double>& weights) {
  if (results.empty()) throw validation_error("aggregate_weighted: no results");
  double wsum = 0.0, er_sum = 0.0, uv_sum = 0.0;
  for (const auto& r : results) {
    auto it = weights.find(r.task_id);
    if (it == weights.end())
      throw validation_error("aggregate_weighted: missing weight for task '" + r.task_id + "'");
    wsum += it->second;
    er_sum += it->second * r.er;
    uv_sum += it->second * r.uv;
  }
  if (wsum <= 0.0) throw validation_error("aggregate_weighted: weights sum to zero");
  return {er_sum / wsum, uv_sum / wsum};
}

struct SweepPoint {
  double delta = 0.0;
  double er_global = 0.0;
  double uv_global = 0.0;
};

enum class SweepMode { key_models, all_models };

// Re-runs key-model selection at each drop threshold (fallback disabled, so
// a task whose budget admits nothing besides its best model keeps that best
// as its own target) and aggregates the per-task reductions. key_models
// evaluates the best->efficient switch, all_models the download-weighted
// redirect of larger models.
inline std::vector<SweepPoint> sweep_utility_drop(const std::vector<TaskBenchmark>& benchmarks,
                                                  const std::vector<double>& deltas, SweepMode mode,
                                                  const std::map<std::string, double>& weights) {
  if (deltas.empty()) throw validation_error("sweep_utility_drop: empty delta list");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (deltas[i] < deltas[i - 1])
      throw validation_error("sweep_utility_drop: deltas must be sorted ascending");

  std::vector<SweepPoint> out;
  out.reserve(deltas.size());
  for (double delta : deltas) {
    std::vector<ScenarioResult> results;
    results.reserve(benchmarks.size());
    for (const auto& bench : benchmarks) {
      KeyModelPair pair = select_key_models(bench, delta, /*allow_fallback=*/false);
      results.push_back(mode == SweepMode::key_models
                            ? run_key_switch(bench, pair)
                            : run_redirect(bench, pair, Policy::redirect_to_efficient));
    }
    auto [er, uv] = aggregate_weighted(results, weights);
    out.push_back({delta, er, uv});
  }
  return out;
}

}  // namespace sufficiency
