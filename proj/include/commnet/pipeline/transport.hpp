#pragma once

#include <map>
#include <memory>
#include <string>

namespace commnet::pipeline {

struct HttpResponse {
  int status = 0;
  std::string body;
  std::map<std::string, std::string> headers;  // lower-cased names
};

// The only place network I/O happens. Implementations throw NetworkError for
// connection-level failures; HTTP error statuses are returned, not thrown.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse get(const std::string& url) = 0;
};

// HTTP(S) via cpp-httplib.
std::unique_ptr<Transport> make_http_transport(std::string user_agent, int timeout_seconds = 60);

// Refuses every request; used with --offline so only cached data is served.
class OfflineTransport final : public Transport {
 public:
  HttpResponse get(const std::string& url) override;
};

}  // namespace commnet::pipeline
