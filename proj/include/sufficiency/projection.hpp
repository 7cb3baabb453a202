#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sufficiency/types.hpp"

namespace sufficiency {

struct EnergyBoundsTwh {
  double low = 0.0;
  double high = 0.0;
};

enum class BaselineKind { datacenter_total, ai_inference };

inline std::string to_string(BaselineKind k) {
  return k == BaselineKind::datacenter_total ? "datacenter_total" : "ai_inference";
}

inline BaselineKind baseline_kind_from_string(std::string_view s) {
  if (s == "datacenter_total") return BaselineKind::datacenter_total;
  if (s == "ai_inference") return BaselineKind::ai_inference;
  throw validation_error("unknown baseline_kind: '" + std::string(s) + "'");
}

// Multi-year consumption projection inputs. The baseline is either total
// datacenter energy (scaled down by the AI and inference shares) or an
// AI-inference series taken as-is. The sobriety and pessimistic scenarios
// phase in linearly across the transition window.
struct ProjectionConfig {
  std::map<int, EnergyBoundsTwh> baseline;  // year -> TWh bounds
  BaselineKind baseline_kind = BaselineKind::datacenter_total;
  double ai_fraction = 0.22;
  double inference_fraction = 0.60;
  double savings_rate = 0.278;
  double increase_rate = 2.112;  // pessimistic multiplier at full transition
  int transition_start = 2025;
  int transition_end = 2026;
  double twh_per_reactor = 8.1;
};

inline void validate(const ProjectionConfig& cfg) {
  if (cfg.ai_fraction < 0.0 || cfg.ai_fraction > 1.0)
    throw validation_error("projection: ai_fraction must be in [0,1]");
  if (cfg.inference_fraction < 0.0 || cfg.inference_fraction > 1.0)
    throw validation_error("projection: inference_fraction must be in [0,1]");
  if (cfg.savings_rate < 0.0 || cfg.savings_rate > 1.0)
    throw validation_error("projection: savings_rate must be in [0,1]");
  if (cfg.increase_rate < 0.0) throw validation_error("projection: increase_rate must be >= 0");
  if (cfg.transition_start >= cfg.transition_end)
    throw validation_error("projection: transition start must precede end");
  if (cfg.baseline.empty()) throw validation_error("projection: empty baseline");
  int first = cfg.baseline.begin()->first;
  int last = cfg.baseline.rbegin()->first;
  for (int year = first; year <= last; ++year)
    if (!cfg.baseline.count(year))
      throw validation_error("projection: baseline missing year " + std::to_string(year));
  for (int year : {cfg.transition_start, cfg.transition_end})
    if (!cfg.baseline.count(year))
      throw validation_error("projection: baseline does not cover transition year " +
                             std::to_string(year));
}

enum class Scenario { business_as_usual, sobriety, pessimistic };

inline std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::business_as_usual: return "business_as_usual";
    case Scenario::sobriety: return "sobriety";
    case Scenario::pessimistic: return "pessimistic";
  }
  return "business_as_usual";
}

struct ProjectionSeries {
  Scenario scenario = Scenario::business_as_usual;
  std::map<int, EnergyBoundsTwh> points;  // year -> TWh bounds
};

// Fraction of the policy applied in a given year: 0 before the transition
// starts, ramping linearly to 1 at its end.
inline double transition_phase(const ProjectionConfig& cfg, int year) {
  if (year <= cfg.transition_start) return 0.0;
  if (year >= cfg.transition_end) return 1.0;
  return static_cast<double>(year - cfg.transition_start) /
         static_cast<double>(cfg.transition_end - cfg.transition_start);
}

// AI-inference baseline for a year, in TWh bounds.
inline EnergyBoundsTwh ai_inference_baseline(const ProjectionConfig& cfg, int year) {
  auto it = cfg.baseline.find(year);
  if (it == cfg.baseline.end())
    throw validation_error("projection: baseline missing year " + std::to_string(year));
  EnergyBoundsTwh b = it->second;
  if (cfg.baseline_kind == BaselineKind::datacenter_total) {
    b.low *= cfg.ai_fraction * cfg.inference_fraction;
    b.high *= cfg.ai_fraction * cfg.inference_fraction;
  }
  return b;
}

// The three futures: business as usual keeps the baseline; sobriety scales
// it by (1 - savings_rate) as the transition completes; pessimistic scales
// it by increase_rate the same way.
inline std::vector<ProjectionSeries> project_consumption(const ProjectionConfig& cfg) {
  validate(cfg);
  ProjectionSeries bau{Scenario::business_as_usual, {}};
  ProjectionSeries sobriety{Scenario::sobriety, {}};
  ProjectionSeries pessimistic{Scenario::pessimistic, {}};
  for (const auto& [year, bounds] : cfg.baseline) {
    (void)bounds;
    EnergyBoundsTwh a = ai_inference_baseline(cfg, year);
    double phase = transition_phase(cfg, year);
    double sobriety_scale = 1.0 - cfg.savings_rate * phase;
    double pessimistic_scale = 1.0 + (cfg.increase_rate - 1.0) * phase;
    bau.points[year] = a;
    sobriety.points[year] = {a.low * sobriety_scale, a.high * sobriety_scale};
    pessimistic.points[year] = {a.low * pessimistic_scale, a.high * pessimistic_scale};
  }
  return {bau, sobriety, pessimistic};
}

// TWh expressed in annual outputs of a nuclear reactor.
inline double reactor_equivalents(double twh, const ProjectionConfig& cfg) {
  if (cfg.twh_per_reactor <= 0.0)
    throw validation_error("reactor_equivalents: twh_per_reactor must be positive");
  if (twh < 0.0) throw validation_error("reactor_equivalents: negative energy");
  return twh / cfg.twh_per_reactor;
}

}  // namespace sufficiency
