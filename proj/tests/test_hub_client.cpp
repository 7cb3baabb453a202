#include <atomic>
#include <thread>

#include <catch2/catch_amalgamated.hpp>
#include <httplib.h>

#include "sufficiency/hub_client.hpp"
#include "sufficiency/snapshot.hpp"
#include "support/fixtures.hpp"

using namespace sufficiency;

namespace {

// Serves {endpoint}/{model_id} from a fixed table; unknown models get 404.
using Responses = std::map<std::string, std::string>;

class StubHub {
 public:
  explicit StubHub(Responses responses)
      : responses_(std::move(responses)) {
    server_.Get(R"(/api/models/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto it = responses_.find(req.matches[1]);
      if (it == responses_.end()) {
        res.status = 404;
        return;
      }
      res.set_content(it->second, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubHub() {
    server_.stop();
    thread_.join();
  }

  std::string endpoint() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/api/models";
  }

 private:
  Responses responses_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_CASE("offline mode is the identity") {
  auto benchmarks = load_snapshot(fixtures::table2_path());
  auto outcome = fetch_usage(benchmarks, "http://unused.invalid/api/models", FetchMode::offline);
  CHECK(outcome.benchmarks == benchmarks);
  CHECK(outcome.attempted == 0);
  CHECK(outcome.warnings.empty());
}

TEST_CASE("refresh updates hub_downloads records from the API") {
  auto benchmarks = load_snapshot(fixtures::table2_path());
  StubHub hub(Responses{{"openai/whisper-base.en", R"({"downloads": 605075})"},
               {"nvidia/canary-1b", R"({"downloads": 99999})"}});

  // zero out the speech entries so the update is visible
  for (auto& t : benchmarks)
    for (auto& m : t.models)
      if (t.task_id == "speech-recognition") m.downloads = 0;

  auto outcome = fetch_usage(benchmarks, hub.endpoint(), FetchMode::refresh);
  const auto* whisper = outcome.benchmarks[3].find_model("openai/whisper-base.en");
  const auto* canary = outcome.benchmarks[3].find_model("nvidia/canary-1b");
  REQUIRE(whisper);
  CHECK(whisper->downloads == 605075);
  CHECK(canary->downloads == 99999);
  CHECK(outcome.refreshed == 2);
}

TEST_CASE("a 404 model keeps its prior value while others update") {
  auto snapshot = std::vector<TaskBenchmark>{fixtures::make_bench(
      "t", {{"good/model", 10, 1.0, 111}, {"missing/model", 20, 2.0, 222}})};
  StubHub hub(Responses{{"good/model", R"({"downloads": 1234})"}});

  auto outcome = fetch_usage(snapshot, hub.endpoint(), FetchMode::refresh);
  CHECK(outcome.benchmarks[0].models[0].downloads == 1234);
  CHECK(outcome.benchmarks[0].models[1].downloads == 222);
  REQUIRE(outcome.warnings.size() == 1);
  CHECK(outcome.warnings[0].model_id == "missing/model");
}

TEST_CASE("malformed responses leave the prior value with a warning") {
  auto snapshot = std::vector<TaskBenchmark>{fixtures::make_bench(
      "t", {{"bad/json", 10, 1.0, 111}, {"bad/shape", 20, 2.0, 222}, {"ok/model", 30, 3.0, 333}})};
  StubHub hub(Responses{{"bad/json", "{nope"},
               {"bad/shape", R"({"download_count": 7})"},
               {"ok/model", R"({"downloads": 42})"}});

  auto outcome = fetch_usage(snapshot, hub.endpoint(), FetchMode::refresh);
  CHECK(outcome.benchmarks[0].models[0].downloads == 111);
  CHECK(outcome.benchmarks[0].models[1].downloads == 222);
  CHECK(outcome.benchmarks[0].models[2].downloads == 42);
  CHECK(outcome.warnings.size() == 2);
}

TEST_CASE("only hub_downloads records are touched") {
  auto snapshot = std::vector<TaskBenchmark>{
      fixtures::make_bench("t", {{"hub/model", 10, 1.0, 1}, {"web/model", 20, 2.0, 2}})};
  snapshot[0].models[1].usage_source = UsageSource::web_visits;
  StubHub hub(Responses{{"hub/model", R"({"downloads": 50})"}, {"web/model", R"({"downloads": 60})"}});

  auto outcome = fetch_usage(snapshot, hub.endpoint(), FetchMode::refresh);
  CHECK(outcome.benchmarks[0].models[0].downloads == 50);
  CHECK(outcome.benchmarks[0].models[1].downloads == 2);
  CHECK(outcome.attempted == 1);
}

TEST_CASE("refresh never alters params, utility or energy") {
  auto benchmarks = load_snapshot(fixtures::table2_path());
  StubHub hub(Responses{{"openai/whisper-base.en", R"({"downloads": 777})"}});
  auto outcome = fetch_usage(benchmarks, hub.endpoint(), FetchMode::refresh);
  REQUIRE(outcome.benchmarks.size() == benchmarks.size());
  for (std::size_t t = 0; t < benchmarks.size(); ++t) {
    for (std::size_t i = 0; i < benchmarks[t].models.size(); ++i) {
      const auto& before = benchmarks[t].models[i];
      const auto& after = outcome.benchmarks[t].models[i];
      CHECK(after.params == before.params);
      CHECK(after.utility == before.utility);
      CHECK(after.energy_j == before.energy_j);
      CHECK(after.energy_source == before.energy_source);
    }
  }
}

TEST_CASE("unreachable endpoint errors only when nothing refreshed") {
  auto snapshot = std::vector<TaskBenchmark>{fixtures::make_bench("t", {{"a/m", 10, 1.0, 1}})};
  CHECK_THROWS_AS(fetch_usage(snapshot, "http://127.0.0.1:1/api/models", FetchMode::refresh),
                  io_error);

  // nothing eligible: no request is attempted, no error
  snapshot[0].models[0].usage_source = UsageSource::web_visits;
  auto outcome = fetch_usage(snapshot, "http://127.0.0.1:1/api/models", FetchMode::refresh);
  CHECK(outcome.attempted == 0);
  CHECK(outcome.benchmarks == snapshot);
}
