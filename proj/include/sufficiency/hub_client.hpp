#pragma once

#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "sufficiency/types.hpp"

namespace sufficiency {

enum class FetchMode { offline, refresh };

struct FetchWarning {
  std::string model_id;
  std::string message;
};

struct FetchOutcome {
  std::vector<TaskBenchmark> benchmarks;
  std::vector<FetchWarning> warnings;
  std::size_t attempted = 0;
  std::size_t refreshed = 0;
};

namespace detail {

struct EndpointParts {
  std::string base;  // scheme://host[:port]
  std::string path;  // leading path, no trailing '/'
};

inline EndpointParts split_endpoint(const std::string& endpoint) {
  auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw validation_error("hub endpoint '" + endpoint + "' must include a scheme");
  auto path_begin = endpoint.find('/', scheme_end + 3);
  EndpointParts parts;
  if (path_begin == std::string::npos) {
    parts.base = endpoint;
  } else {
    parts.base = endpoint.substr(0, path_begin);
    parts.path = endpoint.substr(path_begin);
  }
  while (!parts.path.empty() && parts.path.back() == '/') parts.path.pop_back();
  return parts;
}

}  // namespace detail

// Refreshes download counts from a model-hub API: GET {endpoint}/{model_id}
// must answer {"downloads": <integer>}. Only records whose usage_source is
// hub_downloads are touched; a failing model keeps its prior value and adds
// a warning. Throws io_error only when every attempted refresh failed.
// Offline mode returns the input unchanged.
inline FetchOutcome fetch_usage(std::vector<TaskBenchmark> benchmarks, const std::string& endpoint,
                                FetchMode mode) {
  FetchOutcome outcome;
  if (mode == FetchMode::offline) {
    outcome.benchmarks = std::move(benchmarks);
    return outcome;
  }

  auto parts = detail::split_endpoint(endpoint);
  httplib::Client client(parts.base);
  client.set_connection_timeout(5, 0);
  client.set_read_timeout(10, 0);

  for (auto& task : benchmarks) {
    for (auto& model : task.models) {
      if (model.usage_source != UsageSource::hub_downloads) continue;
      ++outcome.attempted;
      auto res = client.Get(parts.path + "/" + model.id);
      if (!res) {
        outcome.warnings.push_back({model.id, "request failed: " + httplib::to_string(res.error())});
        continue;
      }
      if (res->status != 200) {
        outcome.warnings.push_back({model.id, "HTTP " + std::to_string(res->status)});
        continue;
      }
      nlohmann::json body = nlohmann::json::parse(res->body, nullptr, false);
      if (body.is_discarded() || !body.is_object() || !body.contains("downloads") ||
          !body.at("downloads").is_number_integer()) {
        outcome.warnings.push_back({model.id, "malformed response body"});
        continue;
      }
      std::int64_t downloads = body.at("downloads").get<std::int64_t>();
      if (downloads < 0) {
        outcome.warnings.push_back({model.id, "negative download count"});
        continue;
      }
      model.downloads = downloads;
      ++outcome.refreshed;
    }
  }

  if (outcome.attempted > 0 && outcome.refreshed == 0)
    throw io_error("hub endpoint '" + endpoint + "' unreachable: no model could be refreshed");

  outcome.benchmarks = std::move(benchmarks);
  return outcome;
}

}  // namespace sufficiency
