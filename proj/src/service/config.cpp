#include "examsim/service/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "examsim/provider/scripted.hpp"

namespace examsim::service {

namespace fs = std::filesystem;
using json = nlohmann::json;

const char* const kDefaultMockScript = R"(# Built-in offline examiner.
start | * | * | Welcome to your oral exam practice. I will ask one question at a time.\n\nQuestion 1: Can you describe the basic idea of this topic in your own words?
hint | * | * | %HINT% Think about the simplest concrete example you know and describe what happens step by step.
grade | 3-4 | * | %GRADE:1.7:87% Good work: your answers were mostly correct and well structured. This rating applies only to the discussed subject area. Would you like to continue with the same or a new topic, or conclude?
grade | 5 | * | %GRADE:2.3:78% Solid overall, with some gaps in precision. This rating applies only to the discussed subject area. Would you like to continue with the same or a new topic, or conclude?
grade | * | * | %GRADE:3.0:66% This rating applies only to the discussed subject area. Would you like to continue with the same or a new topic, or conclude?
continue | * | * | Let us continue. Question 1: What is the central concept here, and where is it applied?
close | * | * | Thank you for practicing. Your grades are listed above. Good luck with the exam! %SESSION_END%
answer | * | * | Thank you. That covers the main point, though it could be more precise. Next question: how would you apply this in a concrete example?
* | * | * | Please go on.
)";

EnvLookup process_env() {
  return [](const char* name) -> std::optional<std::string> {
    const char* value = std::getenv(name);
    if (!value) return std::nullopt;
    return std::string(value);
  };
}

namespace {

template <class T>
T get_or(const json& doc, const char* key, T fallback) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field ") + key + " has the wrong type");
  }
}

fs::path resolve(const fs::path& base, const fs::path& p) {
  return p.is_absolute() ? p : base / p;
}

}  // namespace

ServiceConfig parse_service_config(const json& doc, const fs::path& base_dir,
                                   const EnvLookup& env) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ServiceConfig c;
  c.host = get_or<std::string>(doc, "host", c.host);
  c.port = get_or<int>(doc, "port", c.port);
  if (c.port < 0 || c.port > 65535) throw ConfigError("port must be in 0..65535");
  c.sessions_dir = resolve(base_dir, get_or<std::string>(doc, "sessions_dir", "sessions"));
  c.documents_dir = resolve(base_dir, get_or<std::string>(doc, "documents_dir", "documents"));
  if (auto dir = get_or<std::string>(doc, "static_dir", ""); !dir.empty()) {
    c.static_dir = resolve(base_dir, dir);
  }
  c.excerpt_budget = get_or<int>(doc, "excerpt_budget", c.excerpt_budget);
  c.chunk_budget = get_or<int>(doc, "chunk_budget", c.chunk_budget);
  if (c.chunk_budget < 1) throw ConfigError("chunk_budget must be positive");

  c.engine.token_budget = get_or<int>(doc, "token_budget", c.engine.token_budget);
  c.engine.min_questions_for_grade =
      get_or<int>(doc, "min_questions_for_grade", c.engine.min_questions_for_grade);
  c.engine.auto_grade_after = get_or<int>(doc, "auto_grade_after", c.engine.auto_grade_after);
  if (c.engine.min_questions_for_grade < 1 ||
      c.engine.min_questions_for_grade > c.engine.auto_grade_after) {
    throw ConfigError("need 1 <= min_questions_for_grade <= auto_grade_after");
  }

  if (auto it = doc.find("rate_limit"); it != doc.end()) {
    c.rate_limit.capacity = get_or<int>(*it, "capacity", c.rate_limit.capacity);
    c.rate_limit.refill_per_minute =
        get_or<int>(*it, "refill_per_minute", c.rate_limit.refill_per_minute);
    if (c.rate_limit.capacity < 1 || c.rate_limit.refill_per_minute < 1) {
      throw ConfigError("rate_limit values must be positive");
    }
  }

  json provider = get_or<json>(doc, "provider", json::object());
  auto kind = get_or<std::string>(provider, "kind", "mock");
  if (kind == "mock") {
    c.provider.kind = ProviderKind::Mock;
    if (auto script = get_or<std::string>(provider, "script", ""); !script.empty()) {
      c.provider.script = resolve(base_dir, script);
    }
  } else if (kind == "http") {
    c.provider.kind = ProviderKind::Http;
    auto& http = c.provider.http;
    http.base_url = get_or<std::string>(provider, "base_url", http.base_url);
    http.chat_path = get_or<std::string>(provider, "chat_path", http.chat_path);
    http.model = get_or<std::string>(provider, "model", http.model);
    http.timeout = std::chrono::milliseconds(
        get_or<int>(provider, "timeout_ms", static_cast<int>(http.timeout.count())));
    http.api_key = env(kProviderKeyEnv).value_or("");
  } else {
    throw ConfigError("provider.kind must be \"mock\" or \"http\"");
  }
  c.engine.temperature = get_or<double>(provider, "temperature", c.engine.temperature);
  c.engine.max_output_tokens =
      get_or<int>(provider, "max_output_tokens", c.engine.max_output_tokens);
  if (c.engine.temperature < 0 || c.engine.temperature > 2) {
    throw ConfigError("provider.temperature must be in [0, 2]");
  }
  if (c.engine.max_output_tokens < 1) throw ConfigError("provider.max_output_tokens must be positive");

  auto token = env(kApiTokenEnv);
  if (!token || token->empty()) {
    throw ConfigError(std::string("environment variable ") + kApiTokenEnv + " is not set");
  }
  c.api_token = *token;
  return c;
}

ServiceConfig load_service_config(const fs::path& path, const EnvLookup& env) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json doc = json::parse(buf.str(), nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config file " + path.string() + " is not valid JSON");
  return parse_service_config(doc, path.parent_path(), env);
}

std::unique_ptr<provider::ChatProvider> make_provider(const ProviderSettings& settings) {
  if (settings.kind == ProviderKind::Http) {
    return std::make_unique<provider::HttpChatProvider>(settings.http);
  }
  try {
    auto behavior = settings.script.empty()
                        ? provider::ScriptedBehavior::parse(kDefaultMockScript)
                        : provider::ScriptedBehavior::load(settings.script);
    return std::make_unique<provider::ScriptedProvider>(std::move(behavior));
  } catch (const provider::ScriptError& e) {
    throw ConfigError(std::string("mock script: ") + e.what());
  }
}

}  // namespace examsim::service
