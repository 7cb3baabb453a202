#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sufficiency/types.hpp"

namespace sufficiency {

// Per-task energy law log10(E) = alpha * log10(P) + beta, with fit
// diagnostics on the log scale.
struct PowerLawFit {
  std::string task_id;
  double alpha = 0.0;
  double beta = 0.0;
  int n_points = 0;
  double r2 = 0.0;
  double sse_log = 0.0;

  // Reference envelope observed across the measured tasks; fits outside it
  // deserve a second look but are not rejected.
  bool within_reference_envelope() const {
    return alpha >= 0.27 && alpha <= 0.84 && beta >= -5.89 && beta <= 1.4;
  }
};

using EnergyPoint = std::pair<std::int64_t, double>;  // (params, energy_j)

// Ordinary least squares on (log10 params, log10 energy). Needs at least
// two points with two distinct parameter counts and positive energies.
inline PowerLawFit fit_power_law(const std::vector<EnergyPoint>& points,
                                 const std::string& task_id = "") {
  if (points.size() < 2)
    throw validation_error("fit_power_law: need at least 2 points, got " +
                           std::to_string(points.size()));
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& [params, energy] : points) {
    if (params < 1) throw validation_error("fit_power_law: params must be >= 1");
    if (!(energy > 0.0)) throw validation_error("fit_power_law: energy must be positive");
    xs.push_back(std::log10(static_cast<double>(params)));
    ys.push_back(std::log10(energy));
  }
  bool distinct = false;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (xs[i] != xs[0]) distinct = true;
  if (!distinct)
    throw validation_error("fit_power_law: all params equal, slope undefined");

  const double n = static_cast<double>(xs.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double dx = xs[i] - mean_x;
    double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }

  PowerLawFit fit;
  fit.task_id = task_id;
  fit.alpha = sxy / sxx;
  fit.beta = mean_y - fit.alpha * mean_x;
  fit.n_points = static_cast<int>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (fit.alpha * xs[i] + fit.beta);
    fit.sse_log += r * r;
  }
  fit.r2 = syy > 0.0 ? std::clamp(1.0 - fit.sse_log / syy, 0.0, 1.0) : 1.0;
  return fit;
}

// E = 10^beta * P^alpha.
inline double estimate_energy(const PowerLawFit& fit, std::int64_t params) {
  if (params < 1) throw validation_error("estimate_energy: params must be >= 1");
  return std::pow(10.0, fit.beta + fit.alpha * std::log10(static_cast<double>(params)));
}

// Collects (params, energy) fitting inputs from a task's records. Already
// estimated energies are excluded unless asked for, so fits stay anchored
// on measurements.
inline std::vector<EnergyPoint> fit_points(const TaskBenchmark& bench,
                                           bool include_estimated = false) {
  std::vector<EnergyPoint> pts;
  for (const auto& m : bench.models) {
    if (!m.energy_j) continue;
    if (m.energy_source == EnergySource::estimated && !include_estimated) continue;
    pts.emplace_back(m.params, *m.energy_j);
  }
  return pts;
}

// Fills records lacking an energy value from the task's power law and marks
// them estimated. Measured records are never touched; a second application
// is a no-op.
inline TaskBenchmark impute_energies(TaskBenchmark bench, const PowerLawFit& fit) {
  if (!fit.task_id.empty() && fit.task_id != bench.task_id)
    throw validation_error("impute_energies: fit for task '" + fit.task_id +
                           "' applied to task '" + bench.task_id + "'");
  for (auto& m : bench.models) {
    if (m.energy_j) continue;
    m.energy_j = estimate_energy(fit, m.params);
    m.energy_source = EnergySource::estimated;
  }
  return bench;
}

// Mean absolute percentage difference of software-tracker energies against
// hardware-meter references, over paired runs of the same model.
inline double compare_measurements(
    const std::vector<std::pair<MeasurementRecord, MeasurementRecord>>& pairs) {
  if (pairs.empty()) throw validation_error("compare_measurements: no pairs");
  double sum = 0.0;
  for (const auto& [software, hardware] : pairs) {
    if (software.model_id != hardware.model_id)
      throw validation_error("compare_measurements: pair mixes models '" + software.model_id +
                             "' and '" + hardware.model_id + "'");
    if (!(hardware.energy_j > 0.0))
      throw validation_error("compare_measurements: hardware energy must be positive for model '" +
                             hardware.model_id + "'");
    sum += std::abs(software.energy_j - hardware.energy_j) / hardware.energy_j;
  }
  return sum / static_cast<double>(pairs.size());
}

}  // namespace sufficiency
