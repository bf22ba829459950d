#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "examsim/clock.hpp"
#include "examsim/core/grade.hpp"
#include "examsim/core/instructions.hpp"
#include "examsim/core/session.hpp"
#include "examsim/provider/types.hpp"

namespace examsim::core {

struct EngineOptions {
  int min_questions_for_grade = 3;
  int auto_grade_after = 5;
  int token_budget = 8000;
  double temperature = provider::kDefaultTemperature;
  int max_output_tokens = provider::kDefaultMaxOutputTokens;
};

struct SessionConfig {
  std::string subject_area;
  std::string topic;
  ExamMode mode = ExamMode::Practice;
  std::string language = "en";
  StudentContext student_context;
  std::vector<std::string> document_ids;
  std::vector<std::string> material_excerpts;
};

enum class DirectiveKind { Opening, Answer, Hint, Grade, Continue, Close };

std::string_view to_string(DirectiveKind kind);

struct ContinueChoice {
  enum class Kind { SameTopic, NewTopic, Conclude };

  Kind kind = Kind::SameTopic;
  std::string topic;
  // Replacement material for a new topic; nullopt keeps the current excerpts.
  std::optional<std::vector<std::string>> excerpts;

  static ContinueChoice same_topic() { return {Kind::SameTopic, {}, {}}; }
  static ContinueChoice new_topic(std::string topic,
                                  std::optional<std::vector<std::string>> excerpts = {}) {
    return {Kind::NewTopic, std::move(topic), std::move(excerpts)};
  }
  static ContinueChoice conclude() { return {Kind::Conclude, {}, {}}; }
};

// A user-side entry that becomes part of the transcript only once the
// provider's reply to it has been applied.
struct StagedEntry {
  Role role;
  std::string raw_text;
};

// One pending provider round trip for a session. Engine operations do not
// touch the session; apply_provider_response commits the staged entry, the
// model's reply and every counter or phase change at once.
struct Directive {
  DirectiveKind kind = DirectiveKind::Opening;
  std::string session_id;
  std::size_t base_transcript_size = 0;
  Phase base_phase = Phase::QuestionOpen;

  std::optional<StagedEntry> staged;
  std::optional<GradeTrigger> grade_trigger;
  int attempt = 1;
  std::optional<std::string> detected_language;
  std::optional<ContinueChoice> choice;

  provider::ProviderRequest request;
};

struct CreatedSession {
  ExamSession session;
  Directive directive;
};

struct ApplyResult {
  // Set when the reply was rejected and must be re-asked once.
  std::optional<Directive> retry;
  std::optional<GradeRecord> grade;
  // Index of the model entry appended; unset when retry is set.
  std::optional<std::size_t> entry_index;
};

// Pure exam-session state machine. Operations validate the session and
// return a Directive; apply_provider_response turns the model reply into the
// next session state. Sessions are plain values; callers serialise
// operations on one session.
class Engine {
 public:
  explicit Engine(EngineOptions options = {}, Clock clock = system_clock(),
                  IdSource ids = random_ids("s-"));

  const EngineOptions& options() const { return options_; }

  CreatedSession create_session(SessionConfig config) const;
  Directive submit_answer(const ExamSession& session, std::string_view student_text) const;
  Directive request_hint(const ExamSession& session) const;
  Directive request_grade(const ExamSession& session) const;
  Directive continue_session(const ExamSession& session, ContinueChoice choice) const;

  // Errors: StaleDirective when `directive` was not issued against the
  // session's current state; ProtocolViolation once the single re-ask is
  // exhausted. On any error the session is left unchanged.
  ApplyResult apply_provider_response(ExamSession& session, const Directive& directive,
                                      const provider::ProviderResponse& response) const;

  InstructionProfile profile_for(const ExamSession& session) const;

 private:
  Directive make_directive(const ExamSession& session, DirectiveKind kind,
                           std::optional<StagedEntry> staged, std::optional<GradeTrigger> trigger,
                           int segment_count, std::string note) const;
  void build_request(const ExamSession& session, Directive& directive, int segment_count,
                     std::string note) const;

  EngineOptions options_;
  Clock clock_;
  IdSource ids_;
};

}  // namespace examsim::core
