#pragma once

#include <cstdint>
#include <memory>
#include <semaphore>
#include <stdexcept>
#include <string>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "adabon/sources.hpp"

namespace adabon {

struct RemoteOptions {
  std::string base_url;      // e.g. http://127.0.0.1:8080
  int timeout_ms = 5000;
  int max_inflight = 4;      // concurrent requests across all workers
};

// Synchronous scorer client: POST {base}/score with {"prompt_id", "n"} and
// expect {"rewards": [..]} of exactly n numbers. No retries; a non-2xx
// status, transport failure, or wrong arity throws. Concurrent callers share
// one in-flight gate.
inline RemoteFetch make_remote_fetcher(const RemoteOptions& options) {
  if (options.base_url.empty()) throw std::invalid_argument("remote base_url is empty");
  if (options.max_inflight < 1) throw std::invalid_argument("max_inflight must be positive");
  auto gate = std::make_shared<std::counting_semaphore<1 << 20>>(options.max_inflight);
  return [options, gate](const std::string& prompt_id, std::int64_t n) {
    gate->acquire();
    struct Release {
      std::counting_semaphore<1 << 20>* sem;
      ~Release() { sem->release(); }
    } release{gate.get()};

    httplib::Client client(options.base_url);
    client.set_connection_timeout(0, options.timeout_ms * 1000);
    client.set_read_timeout(0, options.timeout_ms * 1000);

    const nlohmann::json body = {{"prompt_id", prompt_id}, {"n", n}};
    auto res = client.Post("/score", body.dump(), "application/json");
    if (!res)
      throw std::runtime_error("scoring request failed for prompt " + prompt_id);
    if (res->status < 200 || res->status >= 300)
      throw std::runtime_error("scoring request for prompt " + prompt_id +
                               " returned status " + std::to_string(res->status));
    std::vector<double> rewards;
    try {
      rewards = nlohmann::json::parse(res->body).at("rewards").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("malformed scoring response for prompt " + prompt_id + ": " +
                               e.what());
    }
    if (std::ssize(rewards) != n)
      throw std::runtime_error("scoring service returned wrong reward count for prompt " +
                               prompt_id);
    return rewards;
  };
}

}  // namespace adabon
