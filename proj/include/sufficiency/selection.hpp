#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "sufficiency/types.hpp"

namespace sufficiency {

// Orientation-normalized utility: higher is always better. Lower-is-better
// metrics are mapped through the task's reference ceiling.
inline double goodness(const ModelRecord& m, const TaskBenchmark& bench) {
  if (bench.higher_is_better) return m.utility;
  if (!bench.lib_ceiling)
    throw validation_error("task '" + bench.task_id +
                           "' has a lower-is-better metric but no lib_ceiling");
  if (*bench.lib_ceiling < m.utility)
    throw validation_error("lib_ceiling " + std::to_string(*bench.lib_ceiling) +
                           " below utility of model '" + m.id + "'");
  return *bench.lib_ceiling - m.utility;
}

// Goodness per parameter, the selection criterion for the efficient model.
inline double efficiency(const ModelRecord& m, const TaskBenchmark& bench) {
  return goodness(m, bench) / static_cast<double>(m.params);
}

struct FrontierPoint {
  std::string id;
  std::int64_t params = 0;
  double goodness = 0.0;
};

// Models not dominated on (params, goodness): dominated means some other
// model has params <= and goodness >=, at least one strictly. Exact ties on
// both axes keep the lexicographically smallest id. Result is sorted by
// ascending params with strictly increasing goodness.
inline std::vector<FrontierPoint> pareto_frontier(const TaskBenchmark& bench) {
  if (bench.models.empty())
    throw validation_error("pareto_frontier: task '" + bench.task_id + "' has no models");
  std::vector<FrontierPoint> pts;
  pts.reserve(bench.models.size());
  for (const auto& m : bench.models) pts.push_back({m.id, m.params, goodness(m, bench)});

  std::sort(pts.begin(), pts.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
    if (a.params != b.params) return a.params < b.params;
    if (a.goodness != b.goodness) return a.goodness > b.goodness;
    return a.id < b.id;
  });

  std::vector<FrontierPoint> frontier;
  for (const auto& p : pts) {
    if (frontier.empty() || p.goodness > frontier.back().goodness) frontier.push_back(p);
  }
  return frontier;
}

struct KeyModelPair {
  std::string task_id;
  std::string best;
  std::string efficient;
  double threshold_delta = 0.05;
  double realized_drop = 0.0;  // (g_best - g_efficient) / g_best
  bool fallback_used = false;
};

namespace detail {

// Deterministic tie order: fewer params first, then smaller id.
inline bool wins_tie(const ModelRecord& a, const ModelRecord& b) {
  if (a.params != b.params) return a.params < b.params;
  return a.id < b.id;
}

}  // namespace detail

// Picks the two key models of a task. best maximizes goodness. efficient
// maximizes efficiency among models whose relative goodness drop versus
// best stays within delta; when that budget admits no candidate besides
// best itself, the constraint is lifted and the unconstrained efficiency
// argmax is taken instead (the pair then reports fallback_used). Setting
// allow_fallback to false keeps the constrained choice, which always
// exists because best satisfies any non-negative budget.
inline KeyModelPair select_key_models(const TaskBenchmark& bench, double delta = 0.05,
                                      bool allow_fallback = true) {
  if (bench.models.empty())
    throw validation_error("select_key_models: task '" + bench.task_id + "' has no models");
  if (delta < 0.0 || delta > 1.0)
    throw validation_error("select_key_models: delta must be in [0,1]");

  const ModelRecord* best = nullptr;
  double g_best = 0.0;
  for (const auto& m : bench.models) {
    double g = goodness(m, bench);
    if (!best || g > g_best || (g == g_best && detail::wins_tie(m, *best))) {
      best = &m;
      g_best = g;
    }
  }
  if (g_best <= 0.0)
    throw validation_error("select_key_models: best goodness is not positive for task '" +
                           bench.task_id + "' (relative drop undefined)");

  KeyModelPair pair;
  pair.task_id = bench.task_id;
  pair.best = best->id;
  pair.threshold_delta = delta;

  if (bench.models.size() == 1) {
    pair.efficient = best->id;
    return pair;
  }

  const ModelRecord* efficient = nullptr;
  double e_efficient = 0.0;
  bool within_budget_besides_best = false;
  for (const auto& m : bench.models) {
    if ((g_best - goodness(m, bench)) / g_best > delta) continue;
    if (&m != best) within_budget_besides_best = true;
    double e = efficiency(m, bench);
    if (!efficient || e > e_efficient || (e == e_efficient && detail::wins_tie(m, *efficient))) {
      efficient = &m;
      e_efficient = e;
    }
  }

  if (allow_fallback && !within_budget_besides_best) {
    efficient = nullptr;
    for (const auto& m : bench.models) {
      double e = efficiency(m, bench);
      if (!efficient || e > e_efficient || (e == e_efficient && detail::wins_tie(m, *efficient))) {
        efficient = &m;
        e_efficient = e;
      }
    }
  }

  pair.efficient = efficient->id;
  pair.realized_drop = (g_best - goodness(*efficient, bench)) / g_best;
  pair.fallback_used = pair.realized_drop > delta;
  return pair;
}

}  // namespace sufficiency
