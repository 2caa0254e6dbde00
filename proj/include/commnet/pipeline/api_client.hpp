#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "commnet/pipeline/cache.hpp"
#include "commnet/pipeline/config.hpp"
#include "commnet/pipeline/transport.hpp"

namespace commnet::pipeline {

using Params = std::map<std::string, std::string>;

std::string url_encode(const std::string& text);
// base?k1=v1&k2=v2 with keys sorted and values percent-encoded.
std::string canonical_request(const std::string& base_url, const Params& params);

// Spaces consecutive calls at least `interval` apart.
class RateLimiter {
 public:
  explicit RateLimiter(std::chrono::nanoseconds interval) : interval_(interval) {}
  void wait();

 private:
  std::chrono::nanoseconds interval_;
  std::chrono::steady_clock::time_point last_{};
  bool first_ = true;
};

// Cached, rate-limited GETs against a MediaWiki API. Server throttling
// (HTTP 429/503, API errors "maxlag"/"ratelimited") is retried with
// exponential backoff: attempt k waits interval * 2^k (or Retry-After, if
// longer). Exhausting max_retries throws NetworkError; everything fetched so
// far stays cached, so a rerun resumes where this one stopped.
class ApiClient {
 public:
  ApiClient(const PipelineConfig& config, Transport& transport, ResponseCache& cache);

  // Raw response body for the request (from cache when present).
  std::string get(const Params& params);

  // Follows "continue" objects until the listing ends. Throws NetworkError
  // when the server hands back a continuation it already sent.
  std::vector<std::string> get_all(const Params& params);

  std::size_t network_calls() const { return network_calls_; }
  std::size_t cache_hits() const { return cache_hits_; }

 private:
  const PipelineConfig& config_;
  Transport& transport_;
  ResponseCache& cache_;
  RateLimiter limiter_;
  std::size_t network_calls_ = 0;
  std::size_t cache_hits_ = 0;
};

}  // namespace commnet::pipeline
