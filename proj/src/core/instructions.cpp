#include "examsim/core/instructions.hpp"

#include <sstream>

#include "examsim/core/grade.hpp"
#include "examsim/core/language.hpp"
#include "examsim/core/tags.hpp"
#include "examsim/errors.hpp"

namespace examsim::core {

namespace {

std::string percent_table() {
  std::ostringstream out;
  int upper = 100;
  for (const auto& grade : GradeValue::all()) {
    int floor = grade_floor_percent(grade);
    if (upper != 100) out << ", ";
    if (floor == 0) {
      out << "below " << upper + 1 << "% = " << grade.to_string();
    } else {
      out << floor << '-' << upper << "% = " << grade.to_string();
    }
    upper = floor - 1;
  }
  return out.str();
}

std::string scale_text(const InstructionProfile& profile) {
  return profile.grade_scale_text.empty() ? grade_scale_text() : profile.grade_scale_text;
}

}  // namespace

std::string_view to_string(ExamMode mode) {
  return mode == ExamMode::Practice ? "practice" : "exam";
}

std::optional<ExamMode> parse_exam_mode(std::string_view text) {
  if (text == "practice") return ExamMode::Practice;
  if (text == "exam") return ExamMode::Exam;
  return std::nullopt;
}

std::string_view to_string(Clause clause) {
  switch (clause) {
    case Clause::Role: return "role";
    case Clause::Process: return "process";
    case Clause::Feedback: return "feedback";
    case Clause::NoFeedback: return "no_feedback";
    case Clause::FollowUp: return "follow_up";
    case Clause::Material: return "material";
    case Clause::StudentContext: return "student_context";
    case Clause::Difficulty: return "difficulty";
    case Clause::Grading: return "grading";
    case Clause::Continuation: return "continuation";
    case Clause::RatingScope: return "rating_scope";
    case Clause::ManualGradeMinimum: return "manual_grade_minimum";
    case Clause::HintOffer: return "hint_offer";
    case Clause::ApplicationExample: return "application_example";
    case Clause::LanguageProficiency: return "language_proficiency";
    case Clause::LanguageMismatch: return "language_mismatch";
    case Clause::HintRequest: return "hint_request";
    case Clause::TagProtocol: return "tag_protocol";
  }
  return "unknown";
}

void validate(const InstructionProfile& profile) {
  if (profile.subject_area.empty()) throw Error(ErrorCode::InvalidProfile, "empty subject area");
  if (profile.current_topic.empty()) throw Error(ErrorCode::InvalidProfile, "empty topic");
  if (profile.language.empty()) throw Error(ErrorCode::InvalidProfile, "empty exam language");
  if (profile.min_questions_for_grade < 1 ||
      profile.min_questions_for_grade > profile.auto_grade_after) {
    throw Error(ErrorCode::InvalidProfile,
                "need 1 <= min_questions_for_grade <= auto_grade_after");
  }
}

bool has_language_mismatch(const InstructionProfile& profile) {
  return profile.observed_language && !profile.observed_language->empty() &&
         !same_language(*profile.observed_language, profile.language);
}

std::vector<Clause> clause_plan(const InstructionProfile& profile) {
  const bool practice = profile.mode == ExamMode::Practice;
  std::vector<Clause> plan = {Clause::Role, Clause::Process};
  plan.push_back(practice ? Clause::Feedback : Clause::NoFeedback);
  plan.push_back(Clause::FollowUp);
  if (!profile.material_excerpts.empty()) plan.push_back(Clause::Material);
  if (!profile.student_context.empty()) plan.push_back(Clause::StudentContext);
  plan.insert(plan.end(), {Clause::Difficulty, Clause::Grading, Clause::Continuation,
                           Clause::RatingScope, Clause::ManualGradeMinimum});
  if (practice) plan.push_back(Clause::HintOffer);
  plan.insert(plan.end(), {Clause::ApplicationExample, Clause::LanguageProficiency});
  if (has_language_mismatch(profile)) plan.push_back(Clause::LanguageMismatch);
  if (practice) plan.push_back(Clause::HintRequest);
  plan.push_back(Clause::TagProtocol);
  return plan;
}

std::string render_clause(Clause clause, const InstructionProfile& p) {
  std::ostringstream out;
  switch (clause) {
    case Clause::Role:
      out << "You are a tutor preparing university students for oral exams. "
             "You play the examiner in a simulated oral examination.";
      break;
    case Clause::Process:
      out << "Ask one question at a time within the subject area \"" << p.subject_area
          << "\", currently on the topic \"" << p.current_topic
          << "\", and let the student respond before you continue.";
      break;
    case Clause::Feedback:
      out << "After each response, provide detailed, subject-specific feedback on its quality, "
             "completeness, correctness and precision.";
      break;
    case Clause::NoFeedback:
      out << "This is exam mode: answers are not commented on, corrected or improved. Do not "
             "give feedback or hints; acknowledge each answer briefly and ask the next question. "
             "The answers are used only for the assessment.";
      break;
    case Clause::FollowUp:
      if (p.mode == ExamMode::Practice) {
        out << "Identify and correct misinformation, and ask follow-up questions when a response "
               "is unclear.";
      } else {
        out << "Ask a follow-up question when a response is unclear, without revealing whether "
               "it was correct.";
      }
      break;
    case Clause::Material:
      out << "Use the following course material provided by the instructor and only assess "
             "topics it covers:";
      for (std::size_t i = 0; i < p.material_excerpts.size(); ++i) {
        out << "\n--- excerpt " << i + 1 << " ---\n" << p.material_excerpts[i];
      }
      out << "\n--- end of material ---";
      break;
    case Clause::StudentContext:
      out << "Student context:";
      for (const auto& [key, value] : p.student_context) out << "\n- " << key << ": " << value;
      break;
    case Clause::Difficulty:
      out << "Start with simple questions to gauge the student's knowledge level, then "
             "progressively ask harder questions.";
      break;
    case Clause::Grading:
      out << "Give a grade when the student requests one or after " << p.auto_grade_after
          << " answered questions, using the university's grading scale (" << scale_text(p)
          << ") together with a percentage (0-100%). The grade must agree with the percentage: "
          << percent_table() << '.';
      break;
    case Clause::Continuation:
      out << "After a grade, ask whether the student wishes to continue with the same or a new "
             "topic, or conclude the session.";
      break;
    case Clause::RatingScope:
      out << "Point out that the rating applies only to the discussed subject area.";
      break;
    case Clause::ManualGradeMinimum:
      out << "For a manually requested evaluation, at least " << p.min_questions_for_grade
          << " questions must have been answered.";
      break;
    case Clause::HintOffer:
      out << "Offer hints if the student struggles to answer a question.";
      break;
    case Clause::ApplicationExample:
      out << "Where possible, frame questions around a concrete application example.";
      break;
    case Clause::LanguageProficiency:
      out << "The exam language is \"" << p.language
          << "\". If the student prepares in another language, mention that proficiency in the "
             "exam language may affect the grade.";
      break;
    case Clause::LanguageMismatch:
      out << "The student has recently answered in \"" << p.observed_language.value_or("")
          << "\" rather than \"" << p.language
          << "\": remind them that proficiency in the exam language may affect the grade.";
      break;
    case Clause::HintRequest:
      out << "Respond with a small hint upon receiving the exact message \"" << kRequestHintMessage
          << "\", and start every hint with the tag " << format_tag(TagName::Hint) << '.';
      break;
    case Clause::TagProtocol:
      out << "Machine-readable tags: whenever you give a grade, include exactly one tag "
             "%GRADE:<grade>:<percent>% with the grade written exactly as on the scale, e.g. "
          << format_tag(TagName::Grade, {"2.0", "82"}) << ". When you conclude the session, "
          << "include the tag " << format_tag(TagName::SessionEnd)
          << ". Use these tags for nothing else.";
      break;
  }
  return out.str();
}

std::string build_instructions(const InstructionProfile& profile) {
  validate(profile);
  std::string out;
  int number = 0;
  for (Clause clause : clause_plan(profile)) {
    if (!out.empty()) out += "\n\n";
    out += std::to_string(++number);
    out += ". ";
    out += render_clause(clause, profile);
  }
  out += '\n';
  return out;
}

}  // namespace examsim::core
