#include "examsim/provider/http_provider.hpp"

#include <json.hpp>
#include <thread>

namespace examsim::provider {

using json = nlohmann::json;

std::chrono::milliseconds RetryPolicy::delay_before(int retry) const {
  auto delay = base_delay;
  for (int i = 1; i < retry; ++i) delay *= factor;
  return delay;
}

std::string build_chat_body(const ProviderRequest& request, const std::string& model) {
  json messages = json::array();
  messages.push_back({{"role", "system"}, {"content", request.instructions}});
  for (const auto& message : request.transcript) {
    messages.push_back({{"role", message.role == ChatRole::User ? "user" : "assistant"},
                        {"content", message.text}});
  }
  if (request.directive_note) {
    messages.push_back({{"role", "system"}, {"content", *request.directive_note}});
  }
  json body = {
      {"model", model},
      {"messages", std::move(messages)},
      {"temperature", request.temperature},
      {"max_tokens", request.max_output_tokens},
  };
  return body.dump();
}

ProviderResponse parse_chat_reply(std::string_view body) {
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ProviderError(ErrorCode::ProviderProtocolError, "backend reply is not a JSON object");
  }
  auto choices = doc.find("choices");
  if (choices == doc.end() || !choices->is_array() || choices->empty()) {
    throw ProviderError(ErrorCode::ProviderProtocolError, "backend reply has no choices");
  }
  const json& first = (*choices)[0];
  if (!first.contains("message") || !first["message"].contains("content") ||
      !first["message"]["content"].is_string()) {
    throw ProviderError(ErrorCode::ProviderProtocolError, "backend reply has no message content");
  }

  ProviderResponse response;
  response.text = first["message"]["content"].get<std::string>();
  if (response.text.empty()) {
    throw ProviderError(ErrorCode::ProviderProtocolError, "backend returned an empty message");
  }
  if (auto usage = doc.find("usage"); usage != doc.end() && usage->is_object()) {
    response.usage = TokenUsage{usage->value("prompt_tokens", 0),
                                usage->value("completion_tokens", 0)};
  }
  return response;
}

HttpChatProvider::HttpChatProvider(HttpProviderConfig config,
                                   std::unique_ptr<HttpTransport> transport, Sleeper sleeper)
    : config_(std::move(config)), transport_(std::move(transport)), sleeper_(std::move(sleeper)) {
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

ProviderResponse HttpChatProvider::attempt(const std::string& url, const std::string& body) {
  HttpReply reply = transport_->post(url, config_.api_key, body, config_.timeout);
  switch (reply.status) {
    case 200:
      return parse_chat_reply(reply.body);
    case 401:
    case 403:
      throw ProviderError(ErrorCode::ProviderAuthError,
                          "backend rejected the credentials (HTTP " +
                              std::to_string(reply.status) + ")");
    case 429:
      throw ProviderError(ErrorCode::ProviderRateLimited, "backend is throttling requests");
    case 408:
    case 504:
      throw ProviderError(ErrorCode::ProviderTimeout, "backend timed out");
    default:
      break;
  }
  if (reply.status >= 500) {
    throw ProviderError(ErrorCode::ProviderUnavailable,
                        "backend failure (HTTP " + std::to_string(reply.status) + ")");
  }
  throw ProviderError(ErrorCode::ProviderProtocolError,
                      "unexpected backend status " + std::to_string(reply.status));
}

ProviderResponse HttpChatProvider::complete(const ProviderRequest& request) {
  validate(request);
  const std::string url = config_.base_url + config_.chat_path;
  const std::string body = build_chat_body(request, config_.model);
  auto started = std::chrono::steady_clock::now();

  for (int retry = 0;; ++retry) {
    try {
      ProviderResponse response = attempt(url, body);
      response.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - started)
                                .count();
      return response;
    } catch (const ProviderError& e) {
      bool transient = e.code() == ErrorCode::ProviderTimeout ||
                       e.code() == ErrorCode::ProviderRateLimited;
      if (!transient || retry >= config_.retry.max_retries) throw;
      sleeper_(config_.retry.delay_before(retry + 1));
    }
  }
}

}  // namespace examsim::provider
