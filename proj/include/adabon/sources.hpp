#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "adabon/core.hpp"
#include "adabon/distributions.hpp"
#include "adabon/rng.hpp"

namespace adabon {

enum class ReplayMode { kShuffle, kPrefix };

struct ReplayPool {
  std::string prompt_id;
  std::vector<double> rewards;
};

// Ordered per-prompt reward pools loaded from a log file.
using RewardLog = std::vector<ReplayPool>;

// Fetches n rewards for a prompt from a scoring service.
using RemoteFetch =
    std::function<std::vector<double>(const std::string& prompt_id, std::int64_t n)>;

// Reads a line-delimited reward log: each non-empty line is an object with a
// string `prompt_id` and a numeric array `rewards`. Parse failures cite the
// 1-based line number; duplicate ids are rejected.
inline RewardLog load_reward_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reward log: " + path);
  RewardLog log;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
      ReplayPool pool;
      pool.prompt_id = record.at("prompt_id").get<std::string>();
      pool.rewards = record.at("rewards").get<std::vector<double>>();
      for (const auto& existing : log)
        if (existing.prompt_id == pool.prompt_id)
          throw std::runtime_error("duplicate prompt_id: " + pool.prompt_id);
      log.push_back(std::move(pool));
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error("reward log parse error at line " + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return log;
}

inline const ReplayPool* find_pool(const RewardLog& log, std::string_view prompt_id) {
  for (const auto& pool : log)
    if (pool.prompt_id == prompt_id) return &pool;
  return nullptr;
}

// Resolved per-batch reward source: exactly one entry per prompt, realized
// into a RewardMatrix per run. Synthetic rows are iid draws; replay rows are
// sampled without replacement from the prompt's pool, independently re-drawn
// per run; remote rows come from the scoring endpoint.
class RewardSource {
 public:
  static RewardSource synthetic(std::vector<SyntheticDistribution> dists) {
    if (dists.empty()) throw std::invalid_argument("synthetic source needs distributions");
    RewardSource s;
    s.dists_ = std::move(dists);
    return s;
  }

  static RewardSource replay(std::vector<ReplayPool> pools,
                             ReplayMode mode = ReplayMode::kShuffle) {
    if (pools.empty()) throw std::invalid_argument("replay source needs pools");
    RewardSource s;
    s.pools_ = std::move(pools);
    s.mode_ = mode;
    return s;
  }

  static RewardSource remote(std::vector<std::string> prompt_ids, RemoteFetch fetch) {
    if (prompt_ids.empty()) throw std::invalid_argument("remote source needs prompt ids");
    if (!fetch) throw std::invalid_argument("remote source needs a fetcher");
    RewardSource s;
    s.remote_ids_ = std::move(prompt_ids);
    s.fetch_ = std::move(fetch);
    return s;
  }

  std::int64_t prompt_count() const {
    if (!dists_.empty()) return std::ssize(dists_);
    if (!pools_.empty()) return std::ssize(pools_);
    return std::ssize(remote_ids_);
  }

  RewardMatrix materialize(std::int64_t width, std::uint64_t run_key) const {
    if (width < 1) throw std::invalid_argument("matrix width must be positive");
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(prompt_count()));

    if (!dists_.empty()) {
      for (std::size_t i = 0; i < dists_.size(); ++i) {
        RandomStream row_rng = RandomStream(run_key).fork(i);
        rows.push_back(draw(dists_[i], width, row_rng));
      }
    } else if (!pools_.empty()) {
      for (std::size_t i = 0; i < pools_.size(); ++i) {
        const auto& pool = pools_[i];
        if (std::ssize(pool.rewards) < width)
          throw std::runtime_error("replay pool too small for prompt " + pool.prompt_id);
        if (mode_ == ReplayMode::kPrefix) {
          rows.emplace_back(pool.rewards.begin(), pool.rewards.begin() + width);
        } else {
          RandomStream row_rng = RandomStream(run_key).fork(i);
          std::vector<std::size_t> idx(pool.rewards.size());
          std::iota(idx.begin(), idx.end(), 0);
          std::vector<double> row;
          row.reserve(static_cast<std::size_t>(width));
          for (std::int64_t t = 0; t < width; ++t) {
            const std::size_t j =
                static_cast<std::size_t>(t) + row_rng.next_below(idx.size() - static_cast<std::size_t>(t));
            std::swap(idx[static_cast<std::size_t>(t)], idx[j]);
            row.push_back(pool.rewards[idx[static_cast<std::size_t>(t)]]);
          }
          rows.push_back(std::move(row));
        }
      }
    } else {
      for (const auto& id : remote_ids_) {
        std::vector<double> row = fetch_(id, width);
        if (std::ssize(row) != width)
          throw std::runtime_error("scoring service returned wrong reward count for prompt " + id);
        rows.push_back(std::move(row));
      }
    }
    return make_reward_matrix(std::move(rows));
  }

 private:
  RewardSource() = default;

  std::vector<SyntheticDistribution> dists_;
  std::vector<ReplayPool> pools_;
  ReplayMode mode_ = ReplayMode::kShuffle;
  std::vector<std::string> remote_ids_;
  RemoteFetch fetch_;
};

}  // namespace adabon
