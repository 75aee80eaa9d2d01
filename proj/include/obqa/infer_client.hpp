#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obqa/error.hpp"

namespace obqa {

// Hex SHA-256; used for cache keys and manifest digests.
std::string sha256_hex(std::string_view data);

struct EndpointConfig {
  std::string base_url;    // scheme://host[:port]
  std::string model_name;
  std::string api_key;     // empty: OBQA_API_KEY, then OPENAI_API_KEY
  double temperature = 0.0;
  int max_new_tokens = 512;
  double request_timeout_s = 30.0;
  int max_in_flight = 4;
  int max_retries = 3;  // retries after the first attempt; 0 = single attempt
  int backoff_base_ms = 250;
};

struct InferRequest {
  std::string id;
  std::string prompt;
};

struct InferResult {
  std::string id;
  bool ok = false;
  std::string completion;
  int attempts = 0;  // network attempts; 0 for cache hits
  bool from_cache = false;
  std::string error;
};

struct CollectStats {
  std::size_t cache_hits = 0;
  std::size_t network_calls = 0;  // every HTTP attempt, retries included
  std::size_t failures = 0;
  std::size_t max_in_flight_observed = 0;
};

// Thrown when the endpoint looks unreachable: cold cache, zero successes and
// every request died at the transport level. Partial failure does NOT abort.
class CollectAborted : public Error {
 public:
  CollectAborted(const std::string& message, std::vector<std::string> ids)
      : Error(message), ids_(std::move(ids)) {}

  const std::vector<std::string>& uncollected() const { return ids_; }

 private:
  std::vector<std::string> ids_;
};

// Batch client for an OpenAI-style chat-completions endpoint with a
// content-addressed disk cache. Results come back in request order.
class InferClient {
 public:
  explicit InferClient(EndpointConfig cfg, std::string cache_dir = "");

  std::vector<InferResult> collect(const std::vector<InferRequest>& requests,
                                   CollectStats* stats = nullptr);

  // Key over everything that shapes a completion: model, prompt, temperature,
  // token cap. Base URL is deliberately excluded so moving a model between
  // hosts keeps the cache warm.
  static std::string cache_key(const EndpointConfig& cfg, std::string_view prompt);

  const EndpointConfig& config() const { return cfg_; }

 private:
  std::optional<std::string> cache_read(std::string_view prompt) const;
  void cache_write(std::string_view prompt, const std::string& completion);

  EndpointConfig cfg_;
  std::string cache_dir_;
  std::string api_key_;
  std::mutex cache_mutex_;
};

}  // namespace obqa
