#include "examsim/service/api.hpp"

#include <algorithm>
#include <cctype>

#include "examsim/core/runner.hpp"
#include "examsim/ingest/document.hpp"
#include "examsim/service/codec.hpp"

namespace examsim::service {

namespace {

struct BadRequest {
  std::string message;
};

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos < path.size()) {
    auto slash = path.find('/', pos);
    auto end = slash == std::string_view::npos ? path.size() : slash;
    if (end > pos) parts.emplace_back(path.substr(pos, end - pos));
    pos = end + 1;
  }
  return parts;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

bool token_matches(std::string_view header, const std::string& token) {
  if (token.empty() || !starts_with_ci(header, "Bearer ")) return false;
  auto given = header.substr(7);
  if (given.size() != token.size()) return false;
  unsigned char diff = 0;
  for (std::size_t i = 0; i < token.size(); ++i) {
    diff |= static_cast<unsigned char>(given[i] ^ token[i]);
  }
  return diff == 0;
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw BadRequest{"body must be a JSON object"};
  return doc;
}

std::string string_field(const json& body, const char* key, std::string fallback = {}) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw BadRequest{std::string(key) + " must be a string"};
  return it->get<std::string>();
}

ApiResponse error_for(const Error& e) {
  auto spec = error_spec(e.code());
  json details = nullptr;
  if (auto* gate = dynamic_cast<const MinQuestionsNotMet*>(&e)) {
    details = {{"required", gate->required()}, {"actual", gate->actual()}};
  } else if (spec.code == "provider_unavailable") {
    details = {{"reason", to_string(e.code())}};
  }
  return error_response(spec, e.what(), std::move(details));
}

json progress(const core::ExamSession& s, const core::EngineOptions& options,
              std::int64_t latency_ms) {
  return {{"session_id", s.id},
          {"phase", core::to_string(s.phase)},
          {"counters", counters_view(s, options)},
          {"latency_ms", latency_ms}};
}

}  // namespace

std::string ApiResponse::content_type() const {
  return text ? "text/plain; charset=utf-8" : "application/json";
}

std::string ApiResponse::payload() const { return text ? *text : body.dump(); }

ApiErrorSpec error_spec(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return {"invalid_config", 400};
    case ErrorCode::InvalidProfile: return {"invalid_profile", 400};
    case ErrorCode::MissingTopic: return {"missing_topic", 400};
    case ErrorCode::EmptyAnswer: return {"empty_answer", 400};
    case ErrorCode::OutOfRange: return {"out_of_range", 400};
    case ErrorCode::EmptyDocument: return {"empty_document", 400};
    case ErrorCode::HintsDisabledInExamMode: return {"hints_disabled", 403};
    case ErrorCode::WrongPhase: return {"wrong_phase", 409};
    case ErrorCode::MinQuestionsNotMet: return {"min_questions_not_met", 409};
    case ErrorCode::StaleDirective: return {"stale_directive", 409};
    case ErrorCode::SessionConcluded: return {"session_concluded", 410};
    case ErrorCode::ProtocolViolation: return {"protocol_violation", 502};
    case ErrorCode::ProviderTimeout:
    case ErrorCode::ProviderRateLimited:
    case ErrorCode::ProviderProtocolError:
    case ErrorCode::ProviderAuthError:
    case ErrorCode::ProviderUnavailable: return {"provider_unavailable", 502};
  }
  return kInternal;
}

ApiResponse error_response(ApiErrorSpec spec, const std::string& message, json details) {
  ApiResponse r;
  r.status = spec.status;
  r.body = {{"error", {{"code", spec.code}, {"message", message}}}};
  if (!details.is_null()) r.body["error"]["details"] = std::move(details);
  return r;
}

Api::Api(const core::Engine& engine, provider::ChatProvider& provider, SessionStore& sessions,
         DocumentStore& documents, RateLimiter& limiter, ApiOptions options,
         IdSource document_ids)
    : engine_(engine),
      provider_(provider),
      sessions_(sessions),
      documents_(documents),
      limiter_(limiter),
      options_(std::move(options)),
      document_ids_(std::move(document_ids)) {}

ApiResponse Api::handle(const ApiRequest& request) {
  try {
    return route(request);
  } catch (const BadRequest& e) {
    return error_response(kInvalidRequest, e.message);
  } catch (const Error& e) {
    return error_for(e);
  } catch (const std::exception& e) {
    return error_response(kInternal, e.what());
  }
}

ApiResponse Api::route(const ApiRequest& request) {
  const auto parts = split_path(request.path);
  const auto& method = request.method;

  if (parts.size() == 1 && parts[0] == "healthz") {
    if (method != "GET") return error_response(kMethodNotAllowed, "use GET");
    ApiResponse r;
    r.text = "ok";
    return r;
  }
  if (parts.empty() || parts[0] != "api") return error_response(kNotFound, "no such endpoint");

  if (!token_matches(request.authorization, options_.api_token)) {
    auto r = error_response(kUnauthorized, "missing or invalid bearer token");
    r.headers.emplace_back("WWW-Authenticate", "Bearer");
    return r;
  }
  if (auto decision = limiter_.acquire(options_.api_token); !decision.allowed) {
    auto r = error_response(kRateLimited, "too many requests",
                            {{"retry_after_seconds", decision.retry_after_seconds}});
    r.headers.emplace_back("Retry-After", std::to_string(decision.retry_after_seconds));
    return r;
  }

  auto require = [&](const char* expected) -> std::optional<ApiResponse> {
    if (method == expected) return std::nullopt;
    auto r = error_response(kMethodNotAllowed, std::string("use ") + expected);
    r.headers.emplace_back("Allow", expected);
    return r;
  };

  if (parts.size() >= 2 && parts[1] == "sessions") {
    if (parts.size() == 2) {
      if (auto bad = require("POST")) return *bad;
      return create_session(parse_body(request.body));
    }
    if (parts.size() == 3) {
      if (auto bad = require("GET")) return *bad;
      return get_session(parts[2]);
    }
    static const std::vector<std::string> actions = {"answer", "hint", "grade", "continue"};
    if (parts.size() == 4 &&
        std::find(actions.begin(), actions.end(), parts[3]) != actions.end()) {
      if (auto bad = require("POST")) return *bad;
      return session_action(parts[2], parts[3], parse_body(request.body));
    }
  }
  if (parts.size() >= 2 && parts[1] == "documents") {
    if (parts.size() == 2) {
      if (auto bad = require("POST")) return *bad;
      return create_document(request);
    }
    if (parts.size() == 3) {
      if (auto bad = require("GET")) return *bad;
      return get_document(parts[2]);
    }
  }
  return error_response(kNotFound, "no such endpoint");
}

std::vector<std::string> Api::excerpts_for(const std::vector<std::string>& document_ids,
                                           const std::string& topic) const {
  std::vector<ingest::Document> docs;
  for (const auto& id : document_ids) {
    auto doc = documents_.load(id);
    if (!doc) {
      throw Error(ErrorCode::InvalidConfig, "unknown document id " + id);
    }
    docs.push_back(std::move(*doc));
  }
  auto refs = ingest::select_excerpts(docs, topic, options_.excerpt_budget);
  return ingest::excerpt_texts(docs, refs);
}

ApiResponse Api::create_session(const json& body) {
  core::SessionConfig config;
  config.subject_area = string_field(body, "subject_area");
  config.topic = string_field(body, "topic");
  auto mode = core::parse_exam_mode(string_field(body, "mode", "practice"));
  if (!mode) throw Error(ErrorCode::InvalidConfig, "mode must be \"practice\" or \"exam\"");
  config.mode = *mode;
  config.language = string_field(body, "language", "en");

  if (auto it = body.find("student_context"); it != body.end() && !it->is_null()) {
    if (!it->is_object()) throw Error(ErrorCode::InvalidConfig, "student_context must be an object");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) {
        throw Error(ErrorCode::InvalidConfig, "student_context values must be strings");
      }
      config.student_context[key] = value.get<std::string>();
    }
  }
  if (auto it = body.find("document_ids"); it != body.end() && !it->is_null()) {
    if (!it->is_array()) throw Error(ErrorCode::InvalidConfig, "document_ids must be an array");
    for (const auto& id : *it) {
      if (!id.is_string()) throw Error(ErrorCode::InvalidConfig, "document ids must be strings");
      config.document_ids.push_back(id.get<std::string>());
    }
  }
  config.material_excerpts = excerpts_for(config.document_ids, config.topic);

  auto created = engine_.create_session(std::move(config));
  auto& session = created.session;
  auto lock = sessions_.lock(session.id);
  auto exchange = core::run_exchange(engine_, provider_, session, std::move(created.directive));
  sessions_.save(session);

  ApiResponse r;
  r.status = 201;
  r.body = session_view(session, engine_.options());
  r.body["latency_ms"] = exchange.latency_ms;
  return r;
}

ApiResponse Api::get_session(const std::string& id) {
  auto lock = sessions_.lock(id);
  auto session = sessions_.load(id);
  if (!session) return error_response(kNotFound, "no session " + id);
  ApiResponse r;
  r.body = session_view(*session, engine_.options());
  r.body["latency_ms"] = 0;
  return r;
}

ApiResponse Api::session_action(const std::string& id, const std::string& action,
                                const json& body) {
  auto lock = sessions_.lock(id);
  auto stored = sessions_.load(id);
  if (!stored) return error_response(kNotFound, "no session " + id);

  core::ExamSession session = *stored;
  try {
    core::Directive directive;
    if (action == "answer") {
      directive = engine_.submit_answer(session, string_field(body, "text"));
    } else if (action == "hint") {
      directive = engine_.request_hint(session);
    } else if (action == "grade") {
      directive = engine_.request_grade(session);
    } else {
      auto choice_name = string_field(body, "choice");
      core::ContinueChoice choice;
      if (choice_name == "same_topic" || choice_name == "same") {
        choice = core::ContinueChoice::same_topic();
      } else if (choice_name == "new_topic" || choice_name == "new") {
        auto topic = string_field(body, "topic");
        std::optional<std::vector<std::string>> excerpts;
        if (!session.document_ids.empty()) excerpts = excerpts_for(session.document_ids, topic);
        choice = core::ContinueChoice::new_topic(std::move(topic), std::move(excerpts));
      } else if (choice_name == "conclude") {
        choice = core::ContinueChoice::conclude();
      } else {
        throw BadRequest{"choice must be same_topic, new_topic or conclude"};
      }
      directive = engine_.continue_session(session, std::move(choice));
    }

    auto exchange = core::run_exchange(engine_, provider_, session, std::move(directive));
    sessions_.save(session);

    const auto& applied = exchange.applied;
    const auto& entry = session.transcript.at(*applied.entry_index);
    ApiResponse r;
    if (action == "continue") {
      r.body = session_view(session, engine_.options());
      r.body["examiner_message"] = entry_view(session, entry);
      r.body["latency_ms"] = exchange.latency_ms;
      return r;
    }
    r.body = progress(session, engine_.options(), exchange.latency_ms);
    r.body[action == "hint" ? "hint_message" : "examiner_message"] = entry_view(session, entry);
    if (applied.grade) r.body["grade"] = grade_view(*applied.grade);
    return r;
  } catch (const Error& e) {
    auto r = error_for(e);
    r.body.update(progress(*stored, engine_.options(), 0));
    return r;
  } catch (const BadRequest& e) {
    auto r = error_response(kInvalidRequest, e.message);
    r.body.update(progress(*stored, engine_.options(), 0));
    return r;
  }
}

ApiResponse Api::create_document(const ApiRequest& request) {
  ingest::Document doc;
  std::string format_name;
  if (starts_with_ci(request.content_type, "application/json")) {
    auto body = parse_body(request.body);
    doc.title = string_field(body, "title");
    doc.body = string_field(body, "body");
    format_name = string_field(body, "format", "plain_text");
  } else {
    auto title = request.query.find("title");
    doc.title = title == request.query.end() ? "" : title->second;
    doc.body = request.body;
    auto format = request.query.find("format");
    if (format != request.query.end()) {
      format_name = format->second;
    } else {
      format_name = starts_with_ci(request.content_type, "text/markdown") ? "markdown" : "plain_text";
    }
  }
  auto format = ingest::parse_document_format(format_name);
  if (!format) throw BadRequest{"format must be plain_text or markdown"};
  doc.format = *format;
  if (doc.title.empty()) doc.title = "untitled";
  doc.id = document_ids_();

  doc = ingest::chunk_document(std::move(doc), documents_.chunk_budget());
  documents_.save(doc);

  int tokens = 0;
  for (const auto& c : doc.chunks) tokens += c.estimated_tokens;
  ApiResponse r;
  r.status = 201;
  r.body = {{"document_id", doc.id},
            {"title", doc.title},
            {"format", ingest::to_string(doc.format)},
            {"chunk_count", doc.chunks.size()},
            {"estimated_tokens", tokens}};
  return r;
}

ApiResponse Api::get_document(const std::string& id) {
  auto doc = documents_.load(id);
  if (!doc) return error_response(kNotFound, "no document " + id);
  int tokens = 0;
  for (const auto& c : doc->chunks) tokens += c.estimated_tokens;
  ApiResponse r;
  r.body = {{"document_id", doc->id},
            {"title", doc->title},
            {"format", ingest::to_string(doc->format)},
            {"chunk_count", doc->chunks.size()},
            {"estimated_tokens", tokens}};
  return r;
}

}  // namespace examsim::service
