#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace examsim::core {

enum class ExamMode { Practice, Exam };

std::string_view to_string(ExamMode mode);
std::optional<ExamMode> parse_exam_mode(std::string_view text);

// Free-form facts about the student (field of study, term, preferences).
// Ordered so rendering is deterministic.
using StudentContext = std::map<std::string, std::string>;

struct InstructionProfile {
  std::string subject_area;
  std::string current_topic;
  ExamMode mode = ExamMode::Practice;
  std::string language = "en";
  int min_questions_for_grade = 3;
  int auto_grade_after = 5;
  std::string grade_scale_text;  // empty means the canonical scale
  std::vector<std::string> material_excerpts;
  StudentContext student_context;
  // Language the student was last detected answering in, if known.
  std::optional<std::string> observed_language;

  bool operator==(const InstructionProfile&) const = default;
};

// The building blocks of the examiner prompt, in rendering order.
enum class Clause {
  Role,
  Process,
  Feedback,
  NoFeedback,
  FollowUp,
  Material,
  StudentContext,
  Difficulty,
  Grading,
  Continuation,
  RatingScope,
  ManualGradeMinimum,
  HintOffer,
  ApplicationExample,
  LanguageProficiency,
  LanguageMismatch,
  HintRequest,
  TagProtocol,
};

std::string_view to_string(Clause clause);

// Throws Error(InvalidProfile).
void validate(const InstructionProfile& profile);

bool has_language_mismatch(const InstructionProfile& profile);

// Which clauses a profile renders, in order.
std::vector<Clause> clause_plan(const InstructionProfile& profile);

std::string render_clause(Clause clause, const InstructionProfile& profile);

// Deterministic examiner system prompt: equal profiles give byte-identical
// text. Throws Error(InvalidProfile).
std::string build_instructions(const InstructionProfile& profile);

}  // namespace examsim::core
