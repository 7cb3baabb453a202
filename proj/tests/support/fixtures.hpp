#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sufficiency/types.hpp"

namespace fixtures {

inline std::string data_dir() { return SUFFICIENCY_DATA_DIR; }
inline std::string table2_path() { return data_dir() + "/table2_snapshot.json"; }

struct ModelSpec {
  std::string id;
  std::int64_t params;
  double utility;
  std::int64_t downloads = 0;
  double energy_j = 0.0;  // 0 means absent
};

inline sufficiency::TaskBenchmark make_bench(const std::string& task_id,
                                             const std::vector<ModelSpec>& specs,
                                             bool higher_is_better = true,
                                             std::optional<double> lib_ceiling = std::nullopt) {
  sufficiency::TaskBenchmark bench;
  bench.task_id = task_id;
  bench.metric_name = "score";
  bench.higher_is_better = higher_is_better;
  bench.lib_ceiling = lib_ceiling;
  for (const auto& s : specs) {
    sufficiency::ModelRecord m;
    m.id = s.id;
    m.task_id = task_id;
    m.params = s.params;
    m.utility = s.utility;
    m.downloads = s.downloads;
    if (s.energy_j > 0.0) {
      m.energy_j = s.energy_j;
      m.energy_source = sufficiency::EnergySource::measured;
    }
    bench.models.push_back(std::move(m));
  }
  return bench;
}

// Random task with positive utilities and energies that follow an increasing
// power law in params, so energy is non-decreasing in model size.
inline sufficiency::TaskBenchmark random_bench(std::mt19937& rng, int n_models,
                                               const std::string& task_id = "task") {
  std::uniform_real_distribution<double> alpha_dist(0.2, 0.9);
  std::uniform_real_distribution<double> beta_dist(-3.0, 0.5);
  std::uniform_real_distribution<double> utility_dist(1.0, 100.0);
  std::uniform_int_distribution<std::int64_t> params_dist(1, 2'000'000'000);
  std::uniform_int_distribution<std::int64_t> downloads_dist(0, 1'000'000);

  double alpha = alpha_dist(rng);
  double beta = beta_dist(rng);

  sufficiency::TaskBenchmark bench;
  bench.task_id = task_id;
  bench.metric_name = "score";
  bench.higher_is_better = true;
  for (int i = 0; i < n_models; ++i) {
    sufficiency::ModelRecord m;
    m.id = "owner/model-" + std::to_string(i);
    m.task_id = task_id;
    m.params = params_dist(rng);
    m.utility = utility_dist(rng);
    m.downloads = downloads_dist(rng);
    m.energy_j = std::pow(10.0, beta + alpha * std::log10(static_cast<double>(m.params)));
    m.energy_source = sufficiency::EnergySource::measured;
    bench.models.push_back(std::move(m));
  }
  return bench;
}

}  // namespace fixtures
