#pragma once

#include <filesystem>
#include <functional>
#include <json.hpp>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "examsim/core/engine.hpp"
#include "examsim/provider/http_provider.hpp"
#include "examsim/provider/types.hpp"
#include "examsim/service/rate_limiter.hpp"

namespace examsim::service {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kApiTokenEnv = "EXAMSIM_API_TOKEN";
inline constexpr const char* kProviderKeyEnv = "EXAMSIM_PROVIDER_KEY";

// Used by the mock provider when the configuration names no script.
extern const char* const kDefaultMockScript;

enum class ProviderKind { Mock, Http };

struct ProviderSettings {
  ProviderKind kind = ProviderKind::Mock;
  // Mock only; empty means kDefaultMockScript.
  std::filesystem::path script;
  provider::HttpProviderConfig http;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::filesystem::path sessions_dir = "sessions";
  std::filesystem::path documents_dir = "documents";
  std::optional<std::filesystem::path> static_dir;
  ProviderSettings provider;
  core::EngineOptions engine;
  int excerpt_budget = 1500;
  int chunk_budget = 800;
  RateLimitConfig rate_limit;
  std::string api_token;
};

using EnvLookup = std::function<std::optional<std::string>(const char* name)>;

EnvLookup process_env();

// Relative paths are resolved against `base_dir`. Throws ConfigError.
ServiceConfig parse_service_config(const nlohmann::json& doc,
                                   const std::filesystem::path& base_dir, const EnvLookup& env);
ServiceConfig load_service_config(const std::filesystem::path& path, const EnvLookup& env);

std::unique_ptr<provider::ChatProvider> make_provider(const ProviderSettings& settings);

}  // namespace examsim::service
