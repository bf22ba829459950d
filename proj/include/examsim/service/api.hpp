#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "examsim/clock.hpp"
#include "examsim/core/engine.hpp"
#include "examsim/errors.hpp"
#include "examsim/provider/types.hpp"
#include "examsim/service/rate_limiter.hpp"
#include "examsim/service/stores.hpp"

namespace examsim::service {

using json = nlohmann::json;

struct ApiRequest {
  std::string method;
  std::string path;
  std::string authorization;
  std::string content_type;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  json body;
  // Set instead of `body` for plain-text replies.
  std::optional<std::string> text;
  std::vector<std::pair<std::string, std::string>> headers;

  std::string content_type() const;
  std::string payload() const;
};

struct ApiErrorSpec {
  std::string_view code;
  int status;
};

// Every library error variant has exactly one API code and status.
ApiErrorSpec error_spec(ErrorCode code);

// Codes that only the API layer produces.
inline constexpr ApiErrorSpec kUnauthorized{"unauthorized", 401};
inline constexpr ApiErrorSpec kNotFound{"not_found", 404};
inline constexpr ApiErrorSpec kMethodNotAllowed{"method_not_allowed", 405};
inline constexpr ApiErrorSpec kRateLimited{"rate_limited", 429};
inline constexpr ApiErrorSpec kInvalidRequest{"invalid_request", 400};
inline constexpr ApiErrorSpec kInternal{"internal_error", 500};

ApiResponse error_response(ApiErrorSpec spec, const std::string& message,
                           json details = nullptr);

struct ApiOptions {
  std::string api_token;
  int excerpt_budget = 1500;
};

// The REST surface, independent of any HTTP library. Thread-safe: requests
// for different sessions run concurrently, requests for one session are
// serialised by the session store.
class Api {
 public:
  Api(const core::Engine& engine, provider::ChatProvider& provider, SessionStore& sessions,
      DocumentStore& documents, RateLimiter& limiter, ApiOptions options,
      IdSource document_ids = random_ids("d-"));

  ApiResponse handle(const ApiRequest& request);

 private:
  ApiResponse route(const ApiRequest& request);
  ApiResponse create_session(const json& body);
  ApiResponse get_session(const std::string& id);
  ApiResponse session_action(const std::string& id, const std::string& action, const json& body);
  ApiResponse create_document(const ApiRequest& request);
  ApiResponse get_document(const std::string& id);

  std::vector<std::string> excerpts_for(const std::vector<std::string>& document_ids,
                                        const std::string& topic) const;

  const core::Engine& engine_;
  provider::ChatProvider& provider_;
  SessionStore& sessions_;
  DocumentStore& documents_;
  RateLimiter& limiter_;
  ApiOptions options_;
  IdSource document_ids_;
};

}  // namespace examsim::service
