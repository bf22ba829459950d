#include "examsim/core/engine.hpp"

#include <algorithm>
#include <cctype>

#include "examsim/core/language.hpp"
#include "examsim/core/tags.hpp"
#include "examsim/errors.hpp"
#include "examsim/provider/budget.hpp"

namespace examsim::core {

namespace {

using provider::Stage;

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

void require_not_concluded(const ExamSession& s) {
  if (s.phase == Phase::Concluded) {
    throw Error(ErrorCode::SessionConcluded, "session " + s.id + " has concluded");
  }
}

void require_open_question(const ExamSession& s) {
  if (s.phase != Phase::QuestionOpen) {
    throw Error(ErrorCode::WrongPhase, "no question is open; choose how to continue first");
  }
  if (s.transcript.empty() || !is_model_side(s.transcript.back().role)) {
    throw Error(ErrorCode::WrongPhase, "the examiner has not asked a question yet");
  }
}

Stage stage_for(DirectiveKind kind, bool grading) {
  if (grading) return Stage::Grade;
  switch (kind) {
    case DirectiveKind::Opening: return Stage::Start;
    case DirectiveKind::Answer: return Stage::Answer;
    case DirectiveKind::Hint: return Stage::Hint;
    case DirectiveKind::Grade: return Stage::Grade;
    case DirectiveKind::Continue: return Stage::Continue;
    case DirectiveKind::Close: return Stage::Close;
  }
  return Stage::Start;
}

std::string grade_now_tail() {
  return " Include exactly one " + std::string("%GRADE:<grade>:<percent>%") +
         " tag, point out that the rating applies only to the discussed subject area, and ask "
         "whether the student wants to continue with the same or a new topic, or conclude.";
}

std::string reask_note(const Directive& d) {
  std::string base = d.request.directive_note.value_or("");
  if (!base.empty()) base += "\n\n";
  if (d.grade_trigger) {
    return base + "Your previous reply had no valid grade tag. Reply again and include exactly "
                  "one tag %GRADE:<grade>:<percent>% where <grade> is one of " +
           grade_scale_text() + " and the percent agrees with the grading table.";
  }
  return base + "Your previous reply was empty. Reply again.";
}

// First GRADE tag whose grade matches the percent table.
std::optional<GradeTagValue> consistent_grade(const std::vector<SentinelTag>& tags) {
  for (const auto& tag : tags) {
    auto value = read_grade(tag);
    if (value && percent_to_grade(value->percent) == value->grade) return value;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(DirectiveKind kind) {
  switch (kind) {
    case DirectiveKind::Opening: return "opening";
    case DirectiveKind::Answer: return "answer";
    case DirectiveKind::Hint: return "hint";
    case DirectiveKind::Grade: return "grade";
    case DirectiveKind::Continue: return "continue";
    case DirectiveKind::Close: return "close";
  }
  return "unknown";
}

Engine::Engine(EngineOptions options, Clock clock, IdSource ids)
    : options_(options), clock_(std::move(clock)), ids_(std::move(ids)) {}

InstructionProfile Engine::profile_for(const ExamSession& session) const {
  InstructionProfile profile;
  profile.subject_area = session.subject_area;
  profile.current_topic = session.current_topic;
  profile.mode = session.mode;
  profile.language = session.language;
  profile.min_questions_for_grade = options_.min_questions_for_grade;
  profile.auto_grade_after = options_.auto_grade_after;
  profile.grade_scale_text = grade_scale_text();
  profile.material_excerpts = session.material_excerpts;
  profile.student_context = session.student_context;
  profile.observed_language = session.observed_language;
  return profile;
}

void Engine::build_request(const ExamSession& session, Directive& d, int segment_count,
                           std::string note) const {
  InstructionProfile profile = profile_for(session);
  if (d.detected_language) profile.observed_language = d.detected_language;
  if (d.choice && d.choice->kind == ContinueChoice::Kind::NewTopic) {
    profile.current_topic = d.choice->topic;
    if (d.choice->excerpts) profile.material_excerpts = *d.choice->excerpts;
  }

  provider::ProviderRequest request;
  request.instructions = build_instructions(profile);
  for (const auto& entry : session.transcript) {
    request.transcript.push_back(
        {is_model_side(entry.role) ? provider::ChatRole::Assistant : provider::ChatRole::User,
         entry.raw_text});
  }
  if (d.staged) request.transcript.push_back({provider::ChatRole::User, d.staged->raw_text});
  request.directive_note = std::move(note);
  request.temperature = options_.temperature;
  request.max_output_tokens = options_.max_output_tokens;
  request.context = {stage_for(d.kind, d.grade_trigger.has_value()), segment_count};
  d.request = provider::fit_to_budget(std::move(request), options_.token_budget);
}

Directive Engine::make_directive(const ExamSession& session, DirectiveKind kind,
                                 std::optional<StagedEntry> staged,
                                 std::optional<GradeTrigger> trigger, int segment_count,
                                 std::string note) const {
  Directive d;
  d.kind = kind;
  d.session_id = session.id;
  d.base_transcript_size = session.transcript.size();
  d.base_phase = session.phase;
  d.staged = std::move(staged);
  d.grade_trigger = trigger;
  build_request(session, d, segment_count, std::move(note));
  return d;
}

CreatedSession Engine::create_session(SessionConfig config) const {
  config.subject_area = trimmed(config.subject_area);
  config.topic = trimmed(config.topic);
  config.language = trimmed(config.language);
  if (config.subject_area.empty()) throw Error(ErrorCode::InvalidConfig, "subject_area is empty");
  if (config.topic.empty()) throw Error(ErrorCode::InvalidConfig, "topic is empty");
  if (config.language.empty()) throw Error(ErrorCode::InvalidConfig, "language is empty");

  ExamSession session;
  session.id = ids_();
  session.subject_area = std::move(config.subject_area);
  session.current_topic = std::move(config.topic);
  session.mode = config.mode;
  session.language = std::move(config.language);
  session.student_context = std::move(config.student_context);
  session.document_ids = std::move(config.document_ids);
  session.material_excerpts = std::move(config.material_excerpts);
  session.created_at = session.updated_at = clock_();

  auto note = "Open the session: greet the student, briefly explain how this simulated oral "
              "exam works, then ask question 1 of this segment on the topic \"" +
              session.current_topic + "\". Start simple.";
  Directive d = make_directive(session, DirectiveKind::Opening, std::nullopt, std::nullopt, 0,
                               std::move(note));
  return {std::move(session), std::move(d)};
}

Directive Engine::submit_answer(const ExamSession& session, std::string_view student_text) const {
  require_not_concluded(session);
  require_open_question(session);
  if (is_blank(student_text)) throw Error(ErrorCode::EmptyAnswer, "the answer is empty");

  const int n = session.answered_in_segment + 1;
  const bool grade_now = n >= options_.auto_grade_after;

  std::string note;
  if (grade_now) {
    note = "The student has now answered " + std::to_string(n) +
           " questions in this segment. Grade the segment now." + grade_now_tail();
  } else if (session.mode == ExamMode::Exam) {
    note = "The student answered question " + std::to_string(n) +
           " of this segment. Do not comment on the answer; ask question " +
           std::to_string(n + 1) + " of this segment.";
  } else {
    note = "The student answered question " + std::to_string(n) +
           " of this segment. Give feedback as instructed, then ask question " +
           std::to_string(n + 1) + " of this segment, a little harder than the last.";
  }

  auto detected = detect_language(student_text);
  if (detected && !same_language(*detected, session.language)) {
    note += " The student answered in \"" + *detected + "\" although the exam language is \"" +
            session.language +
            "\"; mention that proficiency in the exam language may affect the grade.";
  }

  Directive d;
  d.kind = DirectiveKind::Answer;
  d.session_id = session.id;
  d.base_transcript_size = session.transcript.size();
  d.base_phase = session.phase;
  d.staged = StagedEntry{Role::Student, std::string(student_text)};
  if (grade_now) d.grade_trigger = GradeTrigger::AutoAfterFive;
  d.detected_language = std::move(detected);
  build_request(session, d, n, std::move(note));
  return d;
}

Directive Engine::request_hint(const ExamSession& session) const {
  require_not_concluded(session);
  if (session.mode == ExamMode::Exam) {
    throw Error(ErrorCode::HintsDisabledInExamMode, "hints are disabled in exam mode");
  }
  require_open_question(session);
  return make_directive(session, DirectiveKind::Hint,
                        StagedEntry{Role::Student, std::string(kRequestHintMessage)},
                        std::nullopt, session.answered_in_segment,
                        "The student requests a hint for the current question. Reply with a "
                        "small hint that starts with %HINT% and do not reveal the full answer.");
}

Directive Engine::request_grade(const ExamSession& session) const {
  require_not_concluded(session);
  require_open_question(session);
  if (session.answered_in_segment < options_.min_questions_for_grade) {
    throw MinQuestionsNotMet(options_.min_questions_for_grade, session.answered_in_segment);
  }
  const int n = session.answered_in_segment;
  return make_directive(session, DirectiveKind::Grade,
                        StagedEntry{Role::System, "The student requests a grade."},
                        GradeTrigger::ManualRequest, n,
                        "The student requests a grade for the " + std::to_string(n) +
                            " answers of this segment. Grade the segment now." +
                            grade_now_tail());
}

Directive Engine::continue_session(const ExamSession& session, ContinueChoice choice) const {
  require_not_concluded(session);
  if (session.phase != Phase::ContinuationPrompt) {
    throw Error(ErrorCode::WrongPhase, "continuation is only possible right after a grade");
  }

  DirectiveKind kind = DirectiveKind::Continue;
  std::string staged;
  std::string note;
  switch (choice.kind) {
    case ContinueChoice::Kind::SameTopic:
      staged = "The student chooses to continue with the same topic.";
      note = "Continue with the topic \"" + session.current_topic +
             "\": ask question 1 of a new segment. Start simple.";
      break;
    case ContinueChoice::Kind::NewTopic:
      choice.topic = trimmed(choice.topic);
      if (choice.topic.empty()) throw Error(ErrorCode::MissingTopic, "a new topic is required");
      staged = "The student chooses a new topic: " + choice.topic;
      note = "Switch to the new topic \"" + choice.topic +
             "\": ask question 1 of a new segment. Start simple.";
      break;
    case ContinueChoice::Kind::Conclude:
      kind = DirectiveKind::Close;
      staged = "The student chooses to conclude the session.";
      note = "Close the session with a short summary of the grades and include the tag "
             "%SESSION_END%.";
      break;
  }

  Directive d;
  d.kind = kind;
  d.session_id = session.id;
  d.base_transcript_size = session.transcript.size();
  d.base_phase = session.phase;
  d.staged = StagedEntry{Role::System, std::move(staged)};
  d.choice = std::move(choice);
  build_request(session, d, 0, std::move(note));
  return d;
}

ApplyResult Engine::apply_provider_response(ExamSession& session, const Directive& d,
                                            const provider::ProviderResponse& response) const {
  if (d.session_id != session.id || d.base_transcript_size != session.transcript.size() ||
      d.base_phase != session.phase) {
    throw Error(ErrorCode::StaleDirective, "directive does not match the session state");
  }

  auto parsed = parse_tags(response.text);
  std::optional<GradeTagValue> grade;
  bool acceptable = !is_blank(response.text);
  if (acceptable && d.grade_trigger) {
    grade = consistent_grade(parsed.tags);
    acceptable = grade.has_value();
  }
  if (!acceptable) {
    if (d.attempt >= 2) {
      throw Error(ErrorCode::ProtocolViolation,
                  d.grade_trigger ? "the model did not return a valid grade tag after a re-ask"
                                  : "the model returned an empty reply after a re-ask");
    }
    Directive retry = d;
    retry.attempt = d.attempt + 1;
    retry.request.directive_note = reask_note(d);
    return ApplyResult{std::move(retry), std::nullopt, std::nullopt};
  }

  ExamSession next = session;
  const Timestamp now = clock_();

  if (d.staged) {
    next.transcript.push_back(
        make_entry(d.staged->role, d.staged->raw_text, next.transcript.size(), now));
  }
  switch (d.kind) {
    case DirectiveKind::Answer:
      ++next.answered_in_segment;
      ++next.answered_total;
      if (d.detected_language) next.observed_language = d.detected_language;
      break;
    case DirectiveKind::Hint:
      ++next.hints_used;
      break;
    case DirectiveKind::Continue:
      if (d.choice && d.choice->kind == ContinueChoice::Kind::NewTopic) {
        next.current_topic = d.choice->topic;
        if (d.choice->excerpts) next.material_excerpts = *d.choice->excerpts;
      }
      next.phase = Phase::QuestionOpen;
      break;
    case DirectiveKind::Close:
      next.phase = Phase::Concluded;
      break;
    case DirectiveKind::Opening:
    case DirectiveKind::Grade:
      break;
  }

  Role role = Role::Examiner;
  if (d.kind == DirectiveKind::Hint && has_tag(parsed.tags, TagName::Hint)) role = Role::Hint;
  const std::size_t index = next.transcript.size();
  next.transcript.push_back(TranscriptEntry{role, response.text, std::move(parsed.display_text),
                                            std::move(parsed.tags), index, now});

  ApplyResult result;
  result.entry_index = index;
  if (grade) {
    GradeRecord record{grade->grade,
                       grade->percent,
                       next.current_topic,
                       next.answered_in_segment,
                       *d.grade_trigger,
                       std::string(kGradeDisclaimer),
                       index};
    next.grades.push_back(record);
    next.answered_in_segment = 0;
    next.phase = Phase::ContinuationPrompt;
    result.grade = std::move(record);
  }
  next.updated_at = now;
  session = std::move(next);
  return result;
}

}  // namespace examsim::core
