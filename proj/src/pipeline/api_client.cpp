#include "commnet/pipeline/api_client.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <json.hpp>
#include <set>
#include <thread>

#include "commnet/errors.hpp"

namespace commnet::pipeline {

using nlohmann::json;

std::string url_encode(const std::string& text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

std::string canonical_request(const std::string& base_url, const Params& params) {
  std::string out = base_url;
  char sep = base_url.find('?') == std::string::npos ? '?' : '&';
  for (const auto& [key, value] : params) {
    out.push_back(sep);
    out += url_encode(key);
    out.push_back('=');
    out += url_encode(value);
    sep = '&';
  }
  return out;
}

void RateLimiter::wait() {
  const auto now = std::chrono::steady_clock::now();
  if (!first_) {
    const auto ready = last_ + interval_;
    if (now < ready) std::this_thread::sleep_for(ready - now);
  }
  first_ = false;
  last_ = std::chrono::steady_clock::now();
}

ApiClient::ApiClient(const PipelineConfig& config, Transport& transport, ResponseCache& cache)
    : config_(config),
      transport_(transport),
      cache_(cache),
      limiter_(std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::duration<double>(config.request_interval))) {}

namespace {

enum class Outcome { Ok, Retry, Fatal };

struct Classified {
  Outcome outcome;
  std::string reason;
  double retry_after = 0.0;
};

Classified classify(const HttpResponse& r) {
  double retry_after = 0.0;
  if (auto it = r.headers.find("retry-after"); it != r.headers.end()) retry_after = std::atof(it->second.c_str());
  if (r.status == 429 || r.status >= 500)
    return {Outcome::Retry, "HTTP " + std::to_string(r.status), retry_after};
  if (r.status != 200) return {Outcome::Fatal, "HTTP " + std::to_string(r.status), 0.0};
  const auto j = json::parse(r.body, nullptr, false);
  if (j.is_discarded()) return {Outcome::Fatal, "response is not JSON", 0.0};
  if (j.is_object() && j.contains("error")) {
    const std::string code = j["error"].value("code", "unknown");
    if (code == "maxlag" || code == "ratelimited") return {Outcome::Retry, "API error " + code, retry_after};
    return {Outcome::Fatal, "API error " + code + ": " + j["error"].value("info", ""), 0.0};
  }
  return {Outcome::Ok, {}, 0.0};
}

}  // namespace

std::string ApiClient::get(const Params& params) {
  const std::string key = canonical_request(config_.api_base_url, params);
  if (auto hit = cache_.get(key)) {
    ++cache_hits_;
    return std::move(hit->payload);
  }
  if (config_.offline) throw NetworkError("offline mode: request not in cache: " + key);

  std::string last_reason;
  double retry_after = 0.0;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      const double backoff = std::max(config_.request_interval * std::pow(2.0, attempt), retry_after);
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
    }
    retry_after = 0.0;
    limiter_.wait();
    ++network_calls_;
    HttpResponse response;
    try {
      response = transport_.get(key);
    } catch (const NetworkError& e) {
      last_reason = e.what();
      continue;
    }
    const auto c = classify(response);
    if (c.outcome == Outcome::Ok) {
      cache_.put(key, response.body);
      return std::move(response.body);
    }
    if (c.outcome == Outcome::Fatal) throw ConfigError("request rejected (" + c.reason + "): " + key);
    last_reason = c.reason;
    retry_after = c.retry_after;
    std::cerr << "commnet: throttled (" << c.reason << "), backing off: " << key << "\n";
  }
  throw NetworkError("giving up after " + std::to_string(config_.max_retries + 1) + " attempts (" + last_reason +
                     "): " + key + "; responses fetched so far are cached, rerun to resume");
}

std::vector<std::string> ApiClient::get_all(const Params& params) {
  std::vector<std::string> pages;
  std::set<std::string> seen;
  Params request = params;
  while (true) {
    std::string body = get(request);
    const auto j = json::parse(body, nullptr, false);
    pages.push_back(std::move(body));
    if (j.is_discarded() || !j.is_object() || !j.contains("continue")) break;
    const json& cont = j["continue"];
    const std::string token = cont.dump();
    if (!seen.insert(token).second)
      throw NetworkError("continuation loop detected (token " + token + ") for " +
                         canonical_request(config_.api_base_url, params));
    request = params;
    for (const auto& [k, v] : cont.items()) request[k] = v.is_string() ? v.get<std::string>() : v.dump();
  }
  return pages;
}

}  // namespace commnet::pipeline
