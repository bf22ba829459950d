// Kept in its own translation unit: cpp-httplib is expensive to compile.
#include <httplib.h>

#include "examsim/provider/http_provider.hpp"

namespace examsim::provider {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ProviderError(ErrorCode::ProviderUnavailable, "malformed provider URL: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport : public HttpTransport {
 public:
  HttpReply post(const std::string& url, const std::string& bearer_token,
                 const std::string& json_body, std::chrono::milliseconds timeout) override {
    auto [origin, path] = split_url(url);
    httplib::Client client(origin);
    if (!client.is_valid()) {
      throw ProviderError(ErrorCode::ProviderUnavailable,
                          "unsupported provider URL (https requires OpenSSL): " + origin);
    }
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers headers;
    if (!bearer_token.empty()) headers.emplace("Authorization", "Bearer " + bearer_token);

    auto result = client.Post(path, headers, json_body, "application/json");
    if (!result) {
      auto err = result.error();
      if (err == httplib::Error::Read || err == httplib::Error::Write ||
          err == httplib::Error::ConnectionTimeout) {
        throw ProviderError(ErrorCode::ProviderTimeout,
                            "provider call failed: " + httplib::to_string(err));
      }
      throw ProviderError(ErrorCode::ProviderUnavailable,
                          "provider call failed: " + httplib::to_string(err));
    }
    return HttpReply{result->status, result->body};
  }
};

}  // namespace

std::unique_ptr<HttpTransport> make_default_transport() {
  return std::make_unique<HttplibTransport>();
}

}  // namespace examsim::provider
