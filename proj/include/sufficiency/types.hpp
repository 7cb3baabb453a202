#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sufficiency {

// Raised when input data or a requested operation violates a contract.
// The CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a file or endpoint cannot be read or written.
// The CLI maps this to exit code 2.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

enum class UsageSource { hub_downloads, hub_equivalent, web_visits };
enum class EnergySource { measured, estimated, absent };
enum class ParamsSource { reported, estimated };
enum class Field { language, vision, audio, multimodal, tabular };

inline std::string to_string(UsageSource s) {
  switch (s) {
    case UsageSource::hub_downloads: return "hub_downloads";
    case UsageSource::hub_equivalent: return "hub_equivalent";
    case UsageSource::web_visits: return "web_visits";
  }
  return "hub_downloads";
}

inline std::string to_string(EnergySource s) {
  switch (s) {
    case EnergySource::measured: return "measured";
    case EnergySource::estimated: return "estimated";
    case EnergySource::absent: return "absent";
  }
  return "absent";
}

inline std::string to_string(ParamsSource s) {
  switch (s) {
    case ParamsSource::reported: return "reported";
    case ParamsSource::estimated: return "estimated";
  }
  return "reported";
}

inline std::string to_string(Field f) {
  switch (f) {
    case Field::language: return "language";
    case Field::vision: return "vision";
    case Field::audio: return "audio";
    case Field::multimodal: return "multimodal";
    case Field::tabular: return "tabular";
  }
  return "language";
}

inline UsageSource usage_source_from_string(std::string_view s) {
  if (s == "hub_downloads") return UsageSource::hub_downloads;
  if (s == "hub_equivalent") return UsageSource::hub_equivalent;
  if (s == "web_visits") return UsageSource::web_visits;
  throw validation_error("unknown usage_source: '" + std::string(s) + "'");
}

inline EnergySource energy_source_from_string(std::string_view s) {
  if (s == "measured") return EnergySource::measured;
  if (s == "estimated") return EnergySource::estimated;
  if (s == "absent") return EnergySource::absent;
  throw validation_error("unknown energy_source: '" + std::string(s) + "'");
}

inline ParamsSource params_source_from_string(std::string_view s) {
  if (s == "reported") return ParamsSource::reported;
  if (s == "estimated") return ParamsSource::estimated;
  throw validation_error("unknown params_source: '" + std::string(s) + "'");
}

inline Field field_from_string(std::string_view s) {
  if (s == "language") return Field::language;
  if (s == "vision") return Field::vision;
  if (s == "audio") return Field::audio;
  if (s == "multimodal") return Field::multimodal;
  if (s == "tabular") return Field::tabular;
  throw validation_error("unknown field: '" + std::string(s) + "'");
}

// One model's snapshot entry: identity, size, benchmark score, usage and
// (possibly estimated) inference energy per benchmark workload.
struct ModelRecord {
  std::string id;       // hub-style "owner/name"
  std::string task_id;
  std::int64_t params = 0;     // parameter count, >= 1
  double utility = 0.0;        // benchmark score in the task's metric
  std::int64_t downloads = 0;  // monthly downloads or monthly web visits
  UsageSource usage_source = UsageSource::hub_downloads;
  std::optional<double> energy_j;  // Joules per benchmark workload, > 0
  EnergySource energy_source = EnergySource::absent;
  ParamsSource params_source = ParamsSource::reported;

  bool operator==(const ModelRecord&) const = default;
};

// A task with its metric metadata and model records.
struct TaskBenchmark {
  std::string task_id;
  Field field = Field::language;
  std::string metric_name;
  bool higher_is_better = true;
  std::optional<double> lib_ceiling;  // reference ceiling for lower-is-better metrics
  std::vector<ModelRecord> models;
  double task_weight = 0.0;  // task-level total downloads, >= 0

  bool operator==(const TaskBenchmark&) const = default;

  const ModelRecord* find_model(std::string_view model_id) const {
    for (const auto& m : models)
      if (m.id == model_id) return &m;
    return nullptr;
  }
};

// One energy measurement run for a model, from either measurement source.
struct MeasurementRecord {
  std::string model_id;
  enum class Tool { software_tracker, hardware_meter } tool = Tool::software_tracker;
  double energy_j = 0.0;  // > 0
  int run_index = 0;
};

// Checks the per-record and per-task invariants. Throws validation_error
// naming the offending field and model id.
inline void validate_model(const ModelRecord& m) {
  if (m.id.empty()) throw validation_error("model record with empty id (task '" + m.task_id + "')");
  if (m.params < 1)
    throw validation_error("field 'params' must be >= 1 for model '" + m.id + "'");
  if (m.downloads < 0)
    throw validation_error("field 'downloads' must be >= 0 for model '" + m.id + "'");
  if (m.energy_j && *m.energy_j <= 0.0)
    throw validation_error("field 'energy_j' must be > 0 for model '" + m.id + "'");
  if (m.energy_j && m.energy_source == EnergySource::absent)
    throw validation_error("model '" + m.id + "' has energy_j but energy_source=absent");
  if (!m.energy_j && m.energy_source != EnergySource::absent)
    throw validation_error("model '" + m.id + "' has energy_source=" + to_string(m.energy_source) +
                           " but no energy_j");
}

inline void validate_benchmark(const TaskBenchmark& t) {
  if (t.task_id.empty()) throw validation_error("task with empty task_id");
  if (t.task_weight < 0.0)
    throw validation_error("field 'task_weight' must be >= 0 for task '" + t.task_id + "'");
  for (const auto& m : t.models) {
    validate_model(m);
    if (m.task_id != t.task_id)
      throw validation_error("model '" + m.id + "' carries task_id '" + m.task_id +
                             "' inside task '" + t.task_id + "'");
  }
  for (std::size_t i = 0; i < t.models.size(); ++i)
    for (std::size_t j = i + 1; j < t.models.size(); ++j)
      if (t.models[i].id == t.models[j].id)
        throw validation_error("duplicate model '" + t.models[i].id + "' in task '" +
                               t.task_id + "'");
}

inline void validate_snapshot(const std::vector<TaskBenchmark>& benchmarks) {
  for (std::size_t i = 0; i < benchmarks.size(); ++i) {
    validate_benchmark(benchmarks[i]);
    for (std::size_t j = i + 1; j < benchmarks.size(); ++j)
      if (benchmarks[i].task_id == benchmarks[j].task_id)
        throw validation_error("duplicate task_id '" + benchmarks[i].task_id + "' in snapshot");
  }
}

}  // namespace sufficiency
