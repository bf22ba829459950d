#pragma once

// Mandated prompt content per profile flag combination, expressed as
// literal phrases so the check does not go through the clause renderer.

#include <string>
#include <vector>

#include "examsim/core/instructions.hpp"

namespace examsim::testing {

struct Mandate {
  std::string phrase;
  bool practice_only = false;
  bool exam_only = false;
  bool needs_material = false;
  bool needs_mismatch = false;
};

inline std::vector<Mandate> mandate_table() {
  return {
      {"tutor preparing university students for oral exams"},
      {"within the subject area \"Operating Systems\""},
      {"detailed, subject-specific feedback", true},
      {"answers are not commented on", false, true},
      {"follow-up question"},
      {"--- excerpt 1 ---", false, false, true},
      {"progressively ask harder questions"},
      {"after 5 answered questions"},
      {"1.0, 1.3, 1.7, 2.0, 2.3, 2.7, 3.0, 3.3, 3.7, 4.0, 5.0"},
      {"percentage (0-100%)"},
      {"same or a new topic, or conclude"},
      {"applies only to the discussed subject area"},
      {"at least 3 questions must have been answered"},
      {"Offer hints", true},
      {"concrete application example"},
      {"proficiency in the exam language may affect the grade"},
      {"has recently answered in", false, false, false, true},
      {"the exact message \"%REQUEST_HINT%\"", true},
      {"%HINT%", true},
      {"%GRADE:2.0:82%"},
      {"%SESSION_END%"},
  };
}

inline bool mandated(const Mandate& m, bool practice, bool material, bool mismatch) {
  if (m.practice_only && !practice) return false;
  if (m.exam_only && practice) return false;
  if (m.needs_material && !material) return false;
  if (m.needs_mismatch && !mismatch) return false;
  return true;
}

inline core::InstructionProfile matrix_profile(bool practice, bool material, bool mismatch) {
  core::InstructionProfile p;
  p.subject_area = "Operating Systems";
  p.current_topic = "processes";
  p.mode = practice ? core::ExamMode::Practice : core::ExamMode::Exam;
  p.language = "de";
  if (material) p.material_excerpts = {"A process is a program in execution.", "Threads share an address space."};
  p.observed_language = mismatch ? std::optional<std::string>("en") : std::optional<std::string>("de");
  return p;
}

}  // namespace examsim::testing
