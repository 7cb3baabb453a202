#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "sufficiency/report.hpp"
#include "sufficiency/snapshot.hpp"
#include "support/fixtures.hpp"

using namespace sufficiency;

TEST_CASE("floats are rendered at 6 significant digits") {
  CHECK(format_g6(0.8056092324208266) == "0.805609");
  CHECK(format_g6(35529.4) == "35529.4");
  CHECK(format_g6(0.5) == "0.5");
  CHECK(format_g6(0.0) == "0");
  CHECK(format_g6(7.5e-11) == "7.5e-11");
  CHECK(format_g6(123456789.0) == "1.23457e+08");
  CHECK(round_g6(0.8056092324208266) == 0.805609);
}

TEST_CASE("frontier csv lists non-dominated models per task") {
  auto bench = fixtures::make_bench(
      "t", {{"a/small", 1, 1.0}, {"a/mid", 2, 3.0}, {"a/dominated", 3, 2.0}});
  auto csv = frontier_csv({bench});
  CHECK(csv ==
        "task_id,model_id,params,goodness\n"
        "t,a/small,1,1\n"
        "t,a/mid,2,3\n");
}

TEST_CASE("fits json carries exactly the exported fields") {
  PowerLawFit fit{"speech", 0.625792795863642, -2.0608923122125544, 2, 1.0, 0.0};
  auto parsed = nlohmann::json::parse(fits_json({fit}));
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].size() == 5);
  CHECK(parsed[0].at("task_id") == "speech");
  CHECK(parsed[0].at("alpha").get<double>() == 0.625793);
  CHECK(parsed[0].at("beta").get<double>() == -2.06089);
  CHECK(parsed[0].at("n_points").get<int>() == 2);
  CHECK(parsed[0].at("r2").get<double>() == 1.0);
}

TEST_CASE("savings json bundles results and the aggregate") {
  ScenarioResult r;
  r.task_id = "speech-recognition";
  r.policy = Policy::key_switch;
  r.e_before = 3726.0;
  r.e_after = 724.3;
  r.er = 0.8056092324208266;
  r.u_before = 33.3;
  r.u_after = 29.5;
  r.uv = -0.11411411411411411;
  auto parsed = nlohmann::json::parse(savings_json({r}, r.er, r.uv, Policy::key_switch, 0.05));
  CHECK(parsed.at("policy") == "key_switch");
  CHECK(parsed.at("results")[0].at("er").get<double>() == 0.805609);
  CHECK(parsed.at("aggregate").at("er_global").get<double>() == 0.805609);
  CHECK(parsed.at("aggregate").at("uv_global").get<double>() == -0.114114);
}

TEST_CASE("projection csv is ordered year-major within each scenario") {
  ProjectionConfig cfg;
  cfg.baseline_kind = BaselineKind::ai_inference;
  cfg.baseline = {{2025, {10.0, 20.0}}, {2026, {10.0, 20.0}}};
  cfg.savings_rate = 0.5;
  cfg.increase_rate = 2.0;
  auto csv = projection_csv(project_consumption(cfg));
  CHECK(csv ==
        "year,scenario,low_twh,high_twh\n"
        "2025,business_as_usual,10,20\n"
        "2026,business_as_usual,10,20\n"
        "2025,sobriety,10,20\n"
        "2026,sobriety,5,10\n"
        "2025,pessimistic,10,20\n"
        "2026,pessimistic,20,40\n");
}

TEST_CASE("projection config file round trip") {
  auto cfg = load_projection_config(fixtures::data_dir() + "/projection_us_example.json");
  CHECK(cfg.baseline_kind == BaselineKind::ai_inference);
  CHECK(cfg.baseline.at(2025).high == 58.45);
  CHECK(cfg.savings_rate == 0.278);
  CHECK(cfg.increase_rate == 2.112);
  CHECK(cfg.transition_start == 2025);
  CHECK(cfg.transition_end == 2026);

  CHECK_THROWS_AS(load_projection_config("/nonexistent/config.json"), io_error);
}

TEST_CASE("key model csv quotes awkward ids") {
  auto bench = fixtures::make_bench("t,ask", {{"owner/model, v2", 10, 1.0, 5, 2.0}});
  auto pair = select_key_models(bench);
  auto csv = key_models_csv({bench}, {pair});
  CHECK(csv.find("\"t,ask\"") != std::string::npos);
  CHECK(csv.find("\"owner/model, v2\"") != std::string::npos);
}
