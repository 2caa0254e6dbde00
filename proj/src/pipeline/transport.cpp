#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "commnet/pipeline/transport.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>

#include "commnet/errors.hpp"

namespace commnet::pipeline {

namespace {

class HttpTransport final : public Transport {
 public:
  HttpTransport(std::string user_agent, int timeout_seconds)
      : user_agent_(std::move(user_agent)), timeout_seconds_(timeout_seconds) {}

  HttpResponse get(const std::string& url) override {
    // scheme://host[:port]/path?query
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("URL without scheme: '" + url + "'");
    const auto path_begin = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_begin);
    const std::string target = path_begin == std::string::npos ? "/" : url.substr(path_begin);

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_seconds_, 0);
    client.set_read_timeout(timeout_seconds_, 0);
    client.set_follow_location(true);
    const httplib::Headers headers{{"User-Agent", user_agent_}, {"Accept-Encoding", "identity"}};
    auto result = client.Get(target, headers);
    if (!result) throw NetworkError("GET " + url + " failed: " + httplib::to_string(result.error()));

    HttpResponse response;
    response.status = result->status;
    response.body = std::move(result->body);
    for (const auto& [name, value] : result->headers) {
      std::string lower = name;
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      response.headers[lower] = value;
    }
    return response;
  }

 private:
  std::string user_agent_;
  int timeout_seconds_;
};

}  // namespace

std::unique_ptr<Transport> make_http_transport(std::string user_agent, int timeout_seconds) {
  return std::make_unique<HttpTransport>(std::move(user_agent), timeout_seconds);
}

HttpResponse OfflineTransport::get(const std::string& url) {
  throw NetworkError("offline mode: request not in cache: " + url);
}

}  // namespace commnet::pipeline
