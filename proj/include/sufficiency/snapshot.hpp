#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sufficiency/types.hpp"
#include "sufficiency/units.hpp"

namespace sufficiency {

enum class SnapshotFormat { json, csv };

inline SnapshotFormat snapshot_format_from_string(std::string_view s) {
  if (s == "json") return SnapshotFormat::json;
  if (s == "csv") return SnapshotFormat::csv;
  throw validation_error("unknown snapshot format: '" + std::string(s) + "'");
}

// Guesses the format from the file extension, defaulting to JSON.
inline SnapshotFormat snapshot_format_for_path(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return SnapshotFormat::csv;
  return SnapshotFormat::json;
}

namespace detail {

// Shortest exact representation; survives a load/save round trip bit-for-bit.
inline std::string format_double_exact(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::int64_t params_from_json(const nlohmann::json& j, const std::string& model_id) {
  if (j.is_string()) return parse_param_count(j.get<std::string>());
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) {
    double v = j.get<double>();
    std::int64_t r = static_cast<std::int64_t>(v + 0.5);
    if (v <= 0 || std::abs(v - static_cast<double>(r)) > 1e-6)
      throw validation_error("field 'params' is not a positive integer for model '" + model_id + "'");
    return r;
  }
  throw validation_error("field 'params' has unsupported type for model '" + model_id + "'");
}

inline ModelRecord model_from_json(const nlohmann::json& jm, const std::string& task_id) {
  if (!jm.contains("id"))
    throw validation_error("missing required field 'id' in a model of task '" + task_id + "'");
  ModelRecord m;
  m.id = jm.at("id").get<std::string>();
  m.task_id = task_id;
  for (const char* field : {"params", "utility", "downloads", "usage_source"})
    if (!jm.contains(field))
      throw validation_error("missing required field '" + std::string(field) + "' for model '" +
                             m.id + "'");
  m.params = params_from_json(jm.at("params"), m.id);
  m.utility = jm.at("utility").get<double>();
  m.downloads = jm.at("downloads").get<std::int64_t>();
  m.usage_source = usage_source_from_string(jm.at("usage_source").get<std::string>());
  if (jm.contains("energy_j") && !jm.at("energy_j").is_null()) {
    m.energy_j = jm.at("energy_j").get<double>();
    m.energy_source = jm.contains("energy_source")
                          ? energy_source_from_string(jm.at("energy_source").get<std::string>())
                          : EnergySource::measured;
  } else if (jm.contains("energy_source")) {
    m.energy_source = energy_source_from_string(jm.at("energy_source").get<std::string>());
  }
  if (jm.contains("params_source"))
    m.params_source = params_source_from_string(jm.at("params_source").get<std::string>());
  return m;
}

inline std::vector<TaskBenchmark> snapshot_from_json(const nlohmann::json& root) {
  if (!root.is_array()) throw validation_error("snapshot JSON root must be an array of tasks");
  std::vector<TaskBenchmark> out;
  out.reserve(root.size());
  for (std::size_t i = 0; i < root.size(); ++i) {
    const auto& jt = root[i];
    TaskBenchmark t;
    for (const char* field : {"task_id", "field", "metric_name", "higher_is_better"})
      if (!jt.contains(field))
        throw validation_error("missing required field '" + std::string(field) + "' in task record " +
                               std::to_string(i));
    t.task_id = jt.at("task_id").get<std::string>();
    t.field = field_from_string(jt.at("field").get<std::string>());
    t.metric_name = jt.at("metric_name").get<std::string>();
    t.higher_is_better = jt.at("higher_is_better").get<bool>();
    if (jt.contains("lib_ceiling") && !jt.at("lib_ceiling").is_null())
      t.lib_ceiling = jt.at("lib_ceiling").get<double>();
    if (jt.contains("task_weight") && !jt.at("task_weight").is_null())
      t.task_weight = jt.at("task_weight").get<double>();
    if (jt.contains("models"))
      for (const auto& jm : jt.at("models")) t.models.push_back(model_from_json(jm, t.task_id));
    out.push_back(std::move(t));
  }
  validate_snapshot(out);
  return out;
}

inline nlohmann::json snapshot_to_json(const std::vector<TaskBenchmark>& benchmarks) {
  nlohmann::json root = nlohmann::json::array();
  for (const auto& t : benchmarks) {
    nlohmann::json jt;
    jt["task_id"] = t.task_id;
    jt["field"] = to_string(t.field);
    jt["metric_name"] = t.metric_name;
    jt["higher_is_better"] = t.higher_is_better;
    if (t.lib_ceiling) jt["lib_ceiling"] = *t.lib_ceiling;
    jt["task_weight"] = t.task_weight;
    jt["models"] = nlohmann::json::array();
    for (const auto& m : t.models) {
      nlohmann::json jm;
      jm["id"] = m.id;
      jm["params"] = m.params;
      jm["utility"] = m.utility;
      jm["downloads"] = m.downloads;
      jm["usage_source"] = to_string(m.usage_source);
      if (m.energy_j) jm["energy_j"] = *m.energy_j;
      jm["energy_source"] = to_string(m.energy_source);
      jm["params_source"] = to_string(m.params_source);
      jt["models"].push_back(std::move(jm));
    }
    root.push_back(std::move(jt));
  }
  return root;
}

// Minimal RFC4180-style CSV: comma separator, '"' quoting, header row.
inline std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') { cell += '"'; ++i; }
        else quoted = false;
      } else cell += c;
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted)
    throw validation_error("unterminated quote on line " + std::to_string(line_no));
  cells.push_back(cell);
  return cells;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

inline const char* kSnapshotCsvHeader =
    "task_id,field,metric_name,higher_is_better,lib_ceiling,task_weight,"
    "id,params,utility,downloads,usage_source,energy_j,energy_source,params_source";

inline std::vector<TaskBenchmark> snapshot_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw validation_error("CSV snapshot is empty (header row required)");
  auto header = split_csv_line(line, 1);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const char* required : {"task_id", "field", "metric_name", "higher_is_better", "id",
                               "params", "utility", "downloads", "usage_source"})
    if (!col.count(required))
      throw validation_error("CSV header missing required column '" + std::string(required) + "'");

  auto cell = [&](const std::vector<std::string>& cells, const char* name) -> std::string {
    auto it = col.find(name);
    if (it == col.end() || it->second >= cells.size()) return "";
    return cells[it->second];
  };

  std::vector<TaskBenchmark> out;
  std::map<std::string, std::size_t> task_index;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line, line_no);
    ModelRecord m;
    m.id = cell(cells, "id");
    m.task_id = cell(cells, "task_id");
    if (m.task_id.empty())
      throw validation_error("missing required field 'task_id' on line " + std::to_string(line_no));
    if (m.id.empty())
      throw validation_error("missing required field 'id' on line " + std::to_string(line_no));
    try {
      m.params = parse_param_count(cell(cells, "params"));
      m.utility = std::stod(cell(cells, "utility"));
      m.downloads = std::stoll(cell(cells, "downloads"));
      m.usage_source = usage_source_from_string(cell(cells, "usage_source"));
      std::string energy = cell(cells, "energy_j");
      if (!energy.empty()) {
        m.energy_j = std::stod(energy);
        std::string source = cell(cells, "energy_source");
        m.energy_source = source.empty() ? EnergySource::measured : energy_source_from_string(source);
      }
      std::string ps = cell(cells, "params_source");
      if (!ps.empty()) m.params_source = params_source_from_string(ps);

      auto it = task_index.find(m.task_id);
      if (it == task_index.end()) {
        TaskBenchmark t;
        t.task_id = m.task_id;
        t.field = field_from_string(cell(cells, "field"));
        t.metric_name = cell(cells, "metric_name");
        std::string hib = cell(cells, "higher_is_better");
        t.higher_is_better = (hib == "true" || hib == "1");
        std::string ceiling = cell(cells, "lib_ceiling");
        if (!ceiling.empty()) t.lib_ceiling = std::stod(ceiling);
        std::string weight = cell(cells, "task_weight");
        if (!weight.empty()) t.task_weight = std::stod(weight);
        task_index[m.task_id] = out.size();
        out.push_back(std::move(t));
        it = task_index.find(m.task_id);
      }
      out[it->second].models.push_back(std::move(m));
    } catch (const validation_error& e) {
      throw validation_error(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
    } catch (const std::exception& e) {
      throw validation_error("cannot parse line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  validate_snapshot(out);
  return out;
}

inline void snapshot_to_csv(const std::vector<TaskBenchmark>& benchmarks, std::ostream& os) {
  os << kSnapshotCsvHeader << "\n";
  for (const auto& t : benchmarks) {
    for (const auto& m : t.models) {
      os << csv_escape(t.task_id) << ',' << to_string(t.field) << ',' << csv_escape(t.metric_name)
         << ',' << (t.higher_is_better ? "true" : "false") << ','
         << (t.lib_ceiling ? format_double_exact(*t.lib_ceiling) : std::string()) << ','
         << format_double_exact(t.task_weight) << ',' << csv_escape(m.id) << ',' << m.params << ','
         << format_double_exact(m.utility) << ',' << m.downloads << ',' << to_string(m.usage_source)
         << ',' << (m.energy_j ? format_double_exact(*m.energy_j) : std::string()) << ','
         << to_string(m.energy_source) << ',' << to_string(m.params_source) << "\n";
    }
  }
}

}  // namespace detail

inline std::vector<TaskBenchmark> load_snapshot(const std::string& path, SnapshotFormat format) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open snapshot file '" + path + "'");
  if (format == SnapshotFormat::csv) return detail::snapshot_from_csv(in);
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw validation_error("snapshot parse failure in '" + path + "': " + e.what());
  }
  try {
    return detail::snapshot_from_json(root);
  } catch (const nlohmann::json::exception& e) {
    throw validation_error("snapshot field with wrong type in '" + path + "': " + e.what());
  }
}

inline std::vector<TaskBenchmark> load_snapshot(const std::string& path) {
  return load_snapshot(path, snapshot_format_for_path(path));
}

inline void save_snapshot(const std::vector<TaskBenchmark>& benchmarks, const std::string& path,
                          SnapshotFormat format) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot write snapshot file '" + path + "'");
  if (format == SnapshotFormat::csv) {
    detail::snapshot_to_csv(benchmarks, os);
  } else {
    os << detail::snapshot_to_json(benchmarks).dump(2) << "\n";
  }
  if (!os) throw io_error("write failed for snapshot file '" + path + "'");
}

enum class WeightPolicy { declared, sum_of_model_downloads };

// Cross-task aggregation weights: either the stored task_weight or the sum
// of the task's model downloads. All-zero weights leave nothing to average.
inline std::map<std::string, double> task_weights(const std::vector<TaskBenchmark>& benchmarks,
                                                  WeightPolicy policy) {
  if (benchmarks.empty()) throw validation_error("task_weights: no benchmarks");
  std::map<std::string, double> out;
  double total = 0.0;
  for (const auto& t : benchmarks) {
    double w = 0.0;
    if (policy == WeightPolicy::declared) {
      w = t.task_weight;
    } else {
      for (const auto& m : t.models) w += static_cast<double>(m.downloads);
    }
    if (w < 0.0) throw validation_error("negative weight for task '" + t.task_id + "'");
    out[t.task_id] = w;
    total += w;
  }
  if (total <= 0.0) throw validation_error("task_weights: all weights are zero");
  return out;
}

}  // namespace sufficiency
