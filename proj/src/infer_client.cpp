#include "obqa/infer_client.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <openssl/evp.h>

#include "httplib.h"

#include "obqa/corpus.hpp"  // Json
#include "obqa/rng.hpp"

namespace obqa {

namespace {

constexpr const char* kCompletionsPath = "/v1/chat/completions";

std::string env_or_empty(const char* name) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : std::string();
}

std::optional<std::string> extract_completion(const std::string& body) {
  const Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  const auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty()) return std::nullopt;
  const Json& first = (*choices)[0];
  if (!first.is_object()) return std::nullopt;
  const auto message = first.find("message");
  if (message == first.end() || !message->is_object()) return std::nullopt;
  const auto content = message->find("content");
  if (content == message->end() || !content->is_string()) return std::nullopt;
  return content->get<std::string>();
}

std::optional<long> retry_after_seconds(const httplib::Response& res) {
  if (!res.has_header("Retry-After")) return std::nullopt;
  const std::string v = res.get_header_value("Retry-After");
  char* end = nullptr;
  const long sec = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0' || sec < 0) return std::nullopt;
  return sec;
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

InferClient::InferClient(EndpointConfig cfg, std::string cache_dir)
    : cfg_(std::move(cfg)), cache_dir_(std::move(cache_dir)) {
  if (cfg_.base_url.empty()) throw Error("endpoint base_url must be set");
  if (cfg_.max_retries < 0) throw Error("max_retries must be non-negative");
  if (cfg_.max_in_flight < 1) throw Error("max_in_flight must be at least 1");
  if (cfg_.temperature < 0) throw Error("temperature must be non-negative");
  api_key_ = !cfg_.api_key.empty() ? cfg_.api_key : env_or_empty("OBQA_API_KEY");
  if (api_key_.empty()) api_key_ = env_or_empty("OPENAI_API_KEY");
}

std::string InferClient::cache_key(const EndpointConfig& cfg, std::string_view prompt) {
  Json j;
  j["model"] = cfg.model_name;
  j["prompt"] = std::string(prompt);
  j["temperature"] = cfg.temperature;
  j["max_new_tokens"] = cfg.max_new_tokens;
  return sha256_hex(j.dump());
}

std::optional<std::string> InferClient::cache_read(std::string_view prompt) const {
  if (cache_dir_.empty()) return std::nullopt;
  const std::filesystem::path path =
      std::filesystem::path(cache_dir_) / (cache_key(cfg_, prompt) + ".json");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  const std::string body((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  const Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  const auto it = j.find("completion");
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

void InferClient::cache_write(std::string_view prompt, const std::string& completion) {
  if (cache_dir_.empty()) return;
  namespace fs = std::filesystem;
  std::lock_guard<std::mutex> lock(cache_mutex_);
  std::error_code ec;
  fs::create_directories(cache_dir_, ec);
  if (ec) return;  // cache is best-effort; the result still reaches the caller
  const std::string key = cache_key(cfg_, prompt);
  const fs::path final_path = fs::path(cache_dir_) / (key + ".json");
  const fs::path tmp_path = fs::path(cache_dir_) / (key + ".tmp");
  {
    Json j;
    j["model"] = cfg_.model_name;
    j["prompt"] = std::string(prompt);
    j["completion"] = completion;
    std::ofstream out(tmp_path, std::ios::binary);
    if (!out) return;
    out << j.dump();
    if (!out) return;
  }
  fs::rename(tmp_path, final_path, ec);
}

std::vector<InferResult> InferClient::collect(const std::vector<InferRequest>& requests,
                                              CollectStats* stats_out) {
  std::vector<InferResult> results(requests.size());
  std::vector<std::size_t> misses;
  CollectStats stats;

  for (std::size_t i = 0; i < requests.size(); ++i) {
    results[i].id = requests[i].id;
    if (auto hit = cache_read(requests[i].prompt)) {
      results[i].ok = true;
      results[i].from_cache = true;
      results[i].completion = std::move(*hit);
      ++stats.cache_hits;
    } else {
      misses.push_back(i);
    }
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> in_flight{0};
  std::atomic<std::size_t> in_flight_max{0};
  std::atomic<std::size_t> network_calls{0};
  std::vector<char> transport_failure(requests.size(), 0);

  const std::string body_path = kCompletionsPath;
  const auto seconds = static_cast<time_t>(cfg_.request_timeout_s);
  const auto microseconds =
      static_cast<long>((cfg_.request_timeout_s - static_cast<double>(seconds)) * 1e6);

  const auto perform_one = [&](httplib::Client& cli, std::size_t idx) {
    const InferRequest& req = requests[idx];
    InferResult& result = results[idx];

    Json body;
    body["model"] = cfg_.model_name;
    body["messages"] = Json::array({Json{{"role", "user"}, {"content", req.prompt}}});
    body["temperature"] = cfg_.temperature;
    body["max_tokens"] = cfg_.max_new_tokens;
    const std::string payload = body.dump();

    const int max_attempts = cfg_.max_retries + 1;
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
      ++result.attempts;
      ++network_calls;

      const std::size_t cur = in_flight.fetch_add(1) + 1;
      std::size_t seen = in_flight_max.load();
      while (cur > seen && !in_flight_max.compare_exchange_weak(seen, cur)) {
      }
      auto res = cli.Post(body_path, payload, "application/json");
      in_flight.fetch_sub(1);

      std::optional<long> retry_after;
      if (!res) {
        result.error = "transport: " + httplib::to_string(res.error());
        if (attempt == max_attempts) {
          transport_failure[idx] = 1;
          return;
        }
      } else if (res->status == 200) {
        if (auto completion = extract_completion(res->body)) {
          result.ok = true;
          result.error.clear();
          result.completion = std::move(*completion);
          cache_write(req.prompt, result.completion);
        } else {
          result.error = "malformed response body";
        }
        return;
      } else if (retryable_status(res->status)) {
        result.error = "http " + std::to_string(res->status);
        if (attempt == max_attempts) return;
        retry_after = retry_after_seconds(*res);
      } else {
        result.error = "http " + std::to_string(res->status);
        return;  // other 4xx: retrying cannot help
      }

      long delay_ms;
      if (retry_after) {
        delay_ms = std::min(*retry_after, 60L) * 1000L;
      } else {
        delay_ms = static_cast<long>(cfg_.backoff_base_ms) << std::min(attempt - 1, 10);
        SplitMix64 jitter(fnv1a64(req.id) ^ static_cast<std::uint64_t>(attempt));
        delay_ms += static_cast<long>(jitter.below(static_cast<std::uint64_t>(delay_ms / 4 + 1)));
      }
      if (delay_ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
    }
  };

  const auto worker = [&] {
    httplib::Client cli(cfg_.base_url);
    cli.set_connection_timeout(seconds, microseconds);
    cli.set_read_timeout(seconds, microseconds);
    cli.set_write_timeout(seconds, microseconds);
    if (!api_key_.empty()) {
      cli.set_default_headers({{"Authorization", "Bearer " + api_key_}});
    }
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= misses.size()) return;
      perform_one(cli, misses[k]);
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg_.max_in_flight), misses.size());
  if (n_workers == 1) {
    worker();
  } else if (n_workers > 1) {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  stats.network_calls = network_calls.load();
  stats.max_in_flight_observed = in_flight_max.load();
  std::size_t successes = stats.cache_hits;
  bool all_transport = !requests.empty();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].ok) {
      if (!results[i].from_cache) ++successes;
    } else {
      ++stats.failures;
    }
    if (!results[i].ok && !transport_failure[i]) all_transport = false;
  }

  if (!requests.empty() && successes == 0 && stats.cache_hits == 0 && all_transport) {
    std::vector<std::string> ids;
    ids.reserve(requests.size());
    for (const auto& r : requests) ids.push_back(r.id);
    throw CollectAborted("endpoint unreachable: all " + std::to_string(requests.size()) +
                             " request(s) failed at the transport level",
                         std::move(ids));
  }

  if (stats_out) *stats_out = stats;
  return results;
}

}  // namespace obqa
