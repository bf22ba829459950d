#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "examsim/clock.hpp"
#include "examsim/core/grade.hpp"
#include "examsim/core/instructions.hpp"
#include "examsim/core/tags.hpp"

namespace examsim::core {

inline constexpr int kSchemaVersion = 1;

enum class Phase { QuestionOpen, ContinuationPrompt, Concluded };

std::string_view to_string(Phase phase);
std::optional<Phase> parse_phase(std::string_view text);

enum class Role { Examiner, Student, Hint, System };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

// Examiner and Hint speak for the model; Student and System for the user side.
bool is_model_side(Role role);

struct TranscriptEntry {
  Role role = Role::System;
  std::string raw_text;
  std::string display_text;
  std::vector<SentinelTag> tags;
  std::size_t index = 0;
  Timestamp timestamp{};

  bool operator==(const TranscriptEntry&) const = default;
};

// Parses tags out of `raw_text` to fill display_text and tags.
TranscriptEntry make_entry(Role role, std::string raw_text, std::size_t index, Timestamp at);

struct ExamSession {
  std::string id;
  std::string subject_area;
  std::string current_topic;
  ExamMode mode = ExamMode::Practice;
  std::string language = "en";
  StudentContext student_context;
  std::vector<std::string> document_ids;
  std::vector<std::string> material_excerpts;
  std::optional<std::string> observed_language;

  Phase phase = Phase::QuestionOpen;
  int answered_in_segment = 0;
  int answered_total = 0;
  int hints_used = 0;
  std::vector<TranscriptEntry> transcript;
  std::vector<GradeRecord> grades;

  Timestamp created_at{};
  Timestamp updated_at{};
  int schema_version = kSchemaVersion;

  bool operator==(const ExamSession&) const = default;
};

}  // namespace examsim::core
