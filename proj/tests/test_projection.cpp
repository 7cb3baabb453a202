#include <catch2/catch_amalgamated.hpp>

#include "sufficiency/projection.hpp"

using namespace sufficiency;

namespace {

// Back-solved single-year US config: transition completes in 2025.
ProjectionConfig us_config() {
  ProjectionConfig cfg;
  cfg.baseline_kind = BaselineKind::ai_inference;
  cfg.baseline = {{2024, {41.0, 41.0}}, {2025, {58.45, 58.45}}};
  cfg.savings_rate = 0.278;
  cfg.increase_rate = 2.112;
  cfg.transition_start = 2024;
  cfg.transition_end = 2025;
  return cfg;
}

const ProjectionSeries& series(const std::vector<ProjectionSeries>& all, Scenario which) {
  for (const auto& s : all)
    if (s.scenario == which) return s;
  FAIL("scenario series missing");
  return all.front();
}

}  // namespace

TEST_CASE("sobriety saving and pessimistic level at full transition") {
  auto all = project_consumption(us_config());
  REQUIRE(all.size() == 3);
  const auto& bau = series(all, Scenario::business_as_usual);
  const auto& sobriety = series(all, Scenario::sobriety);
  const auto& pessimistic = series(all, Scenario::pessimistic);

  CHECK(bau.points.at(2025).high == Catch::Approx(58.45));
  CHECK(bau.points.at(2025).high - sobriety.points.at(2025).high ==
        Catch::Approx(16.25).margin(0.01));
  CHECK(pessimistic.points.at(2025).high == Catch::Approx(123.4).margin(0.05));
}

TEST_CASE("zero savings rate makes sobriety business as usual") {
  auto cfg = us_config();
  cfg.savings_rate = 0.0;
  auto all = project_consumption(cfg);
  const auto& bau = series(all, Scenario::business_as_usual);
  const auto& sobriety = series(all, Scenario::sobriety);
  for (const auto& [year, bounds] : bau.points) {
    CHECK(sobriety.points.at(year).low == bounds.low);
    CHECK(sobriety.points.at(year).high == bounds.high);
  }
}

TEST_CASE("transition ramps linearly") {
  ProjectionConfig cfg;
  cfg.baseline_kind = BaselineKind::ai_inference;
  cfg.baseline = {{2024, {100.0, 100.0}},
                  {2025, {100.0, 100.0}},
                  {2026, {100.0, 100.0}},
                  {2027, {100.0, 100.0}},
                  {2028, {100.0, 100.0}}};
  cfg.savings_rate = 0.4;
  cfg.increase_rate = 2.0;
  cfg.transition_start = 2025;
  cfg.transition_end = 2027;
  auto all = project_consumption(cfg);
  const auto& sobriety = series(all, Scenario::sobriety);
  const auto& pessimistic = series(all, Scenario::pessimistic);
  CHECK(sobriety.points.at(2024).high == Catch::Approx(100.0));  // before the window
  CHECK(sobriety.points.at(2025).high == Catch::Approx(100.0));  // ramp starts at 0
  CHECK(sobriety.points.at(2026).high == Catch::Approx(80.0));   // halfway
  CHECK(sobriety.points.at(2027).high == Catch::Approx(60.0));   // complete
  CHECK(sobriety.points.at(2028).high == Catch::Approx(60.0));   // stays complete
  CHECK(pessimistic.points.at(2026).high == Catch::Approx(150.0));
  CHECK(pessimistic.points.at(2028).high == Catch::Approx(200.0));
}

TEST_CASE("datacenter_total baselines are scaled by the AI and inference shares") {
  ProjectionConfig cfg;
  cfg.baseline_kind = BaselineKind::datacenter_total;
  cfg.baseline = {{2025, {100.0, 200.0}}, {2026, {100.0, 200.0}}};
  cfg.ai_fraction = 0.22;
  cfg.inference_fraction = 0.60;
  auto all = project_consumption(cfg);
  const auto& bau = series(all, Scenario::business_as_usual);
  CHECK(bau.points.at(2025).low == Catch::Approx(100.0 * 0.22 * 0.60));
  CHECK(bau.points.at(2025).high == Catch::Approx(200.0 * 0.22 * 0.60));
}

TEST_CASE("scenario ordering after the transition") {
  ProjectionConfig cfg;
  cfg.baseline_kind = BaselineKind::ai_inference;
  for (int year = 2023; year <= 2030; ++year)
    cfg.baseline[year] = {50.0 + year - 2023, 80.0 + 2.0 * (year - 2023)};
  auto all = project_consumption(cfg);
  const auto& bau = series(all, Scenario::business_as_usual);
  const auto& sobriety = series(all, Scenario::sobriety);
  const auto& pessimistic = series(all, Scenario::pessimistic);
  for (int year = cfg.transition_end; year <= 2030; ++year) {
    CAPTURE(year);
    CHECK(sobriety.points.at(year).high <= bau.points.at(year).high);
    CHECK(bau.points.at(year).high <= pessimistic.points.at(year).high);
    CHECK(sobriety.points.at(year).low <= bau.points.at(year).low);
  }
}

TEST_CASE("projection config validation") {
  auto cfg = us_config();
  cfg.baseline.erase(2024);  // transition start no longer covered
  CHECK_THROWS_AS(project_consumption(cfg), validation_error);

  cfg = us_config();
  cfg.baseline[2027] = {70.0, 70.0};  // gap: 2026 missing
  CHECK_THROWS_AS(project_consumption(cfg), validation_error);

  cfg = us_config();
  cfg.savings_rate = 1.5;
  CHECK_THROWS_AS(project_consumption(cfg), validation_error);

  cfg = us_config();
  cfg.transition_start = 2025;
  cfg.transition_end = 2025;
  CHECK_THROWS_AS(project_consumption(cfg), validation_error);
}

TEST_CASE("world-scale back-solved savings") {
  ProjectionConfig cfg;
  cfg.baseline_kind = BaselineKind::ai_inference;
  cfg.baseline = {{2024, {80.0, 80.0}},
                  {2025, {31.9 / 0.278, 31.9 / 0.278}},
                  {2026, {200.0, 200.0}},
                  {2027, {300.0, 300.0}},
                  {2028, {106.0 / 0.278, 106.0 / 0.278}}};
  cfg.transition_start = 2024;
  cfg.transition_end = 2025;
  auto all = project_consumption(cfg);
  const auto& bau = series(all, Scenario::business_as_usual);
  const auto& sobriety = series(all, Scenario::sobriety);
  CHECK(bau.points.at(2025).high - sobriety.points.at(2025).high ==
        Catch::Approx(31.9).margin(0.05));
  CHECK(bau.points.at(2028).high - sobriety.points.at(2028).high ==
        Catch::Approx(106.0).margin(0.05));
}

TEST_CASE("reactor equivalents") {
  ProjectionConfig cfg;
  cfg.baseline = {{2025, {1.0, 1.0}}, {2026, {1.0, 1.0}}};
  CHECK(reactor_equivalents(16.25, cfg) == Catch::Approx(2.0).margin(0.01));
  CHECK(reactor_equivalents(0.0, cfg) == 0.0);

  cfg.twh_per_reactor = 6.4;
  CHECK(reactor_equivalents(31.9, cfg) == Catch::Approx(5.0).margin(0.02));

  cfg.twh_per_reactor = 0.0;
  CHECK_THROWS_AS(reactor_equivalents(1.0, cfg), validation_error);
  cfg.twh_per_reactor = 8.1;
  CHECK_THROWS_AS(reactor_equivalents(-1.0, cfg), validation_error);
}
