#include "examsim/core/session.hpp"

namespace examsim::core {

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::QuestionOpen: return "question_open";
    case Phase::ContinuationPrompt: return "continuation_prompt";
    case Phase::Concluded: return "concluded";
  }
  return "unknown";
}

std::optional<Phase> parse_phase(std::string_view text) {
  for (Phase p : {Phase::QuestionOpen, Phase::ContinuationPrompt, Phase::Concluded}) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Examiner: return "examiner";
    case Role::Student: return "student";
    case Role::Hint: return "hint";
    case Role::System: return "system";
  }
  return "unknown";
}

std::optional<Role> parse_role(std::string_view text) {
  for (Role r : {Role::Examiner, Role::Student, Role::Hint, Role::System}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

bool is_model_side(Role role) { return role == Role::Examiner || role == Role::Hint; }

TranscriptEntry make_entry(Role role, std::string raw_text, std::size_t index, Timestamp at) {
  auto parsed = parse_tags(raw_text);
  return TranscriptEntry{role,  std::move(raw_text), std::move(parsed.display_text),
                         std::move(parsed.tags), index, at};
}

}  // namespace examsim::core
