#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "examsim/provider/types.hpp"

namespace examsim::provider {

inline constexpr std::chrono::milliseconds kDefaultRequestTimeout{15000};

// Retries apply to Timeout and RateLimited only.
struct RetryPolicy {
  int max_retries = 2;
  std::chrono::milliseconds base_delay{500};
  int factor = 2;

  // Delay before retry number `retry` (1-based).
  std::chrono::milliseconds delay_before(int retry) const;
};

struct HttpProviderConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string chat_path = "/chat/completions";
  std::string model = "gpt-4o-mini";
  std::string api_key;
  std::chrono::milliseconds timeout = kDefaultRequestTimeout;
  RetryPolicy retry;
};

struct HttpReply {
  int status = 0;
  std::string body;
};

// One POST round trip. Throws ProviderError(ProviderTimeout) when the
// deadline passes and ProviderError(ProviderUnavailable) when no connection
// can be made.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpReply post(const std::string& url, const std::string& bearer_token,
                         const std::string& json_body, std::chrono::milliseconds timeout) = 0;
};

std::unique_ptr<HttpTransport> make_default_transport();

using Sleeper = std::function<void(std::chrono::milliseconds)>;

// OpenAI-compatible chat completions: instructions become the system
// message, the transcript alternates user/assistant, and the directive note
// is appended as a trailing system message.
std::string build_chat_body(const ProviderRequest& request, const std::string& model);
ProviderResponse parse_chat_reply(std::string_view body);

class HttpChatProvider : public ChatProvider {
 public:
  explicit HttpChatProvider(HttpProviderConfig config,
                            std::unique_ptr<HttpTransport> transport = make_default_transport(),
                            Sleeper sleeper = {});

  ProviderResponse complete(const ProviderRequest& request) override;

 private:
  ProviderResponse attempt(const std::string& url, const std::string& body);

  HttpProviderConfig config_;
  std::unique_ptr<HttpTransport> transport_;
  Sleeper sleeper_;
};

}  // namespace examsim::provider
