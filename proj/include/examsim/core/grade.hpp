#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace examsim::core {

// A grade on the German university scale 1.0 (best) ... 4.0 (pass), 5.0
// (fail). Only the eleven scale steps are representable.
class GradeValue {
 public:
  static std::optional<GradeValue> parse(std::string_view text);
  static std::span<const GradeValue> all();

  // "1.0", "2.3", ...
  std::string to_string() const;
  int tenths() const { return tenths_; }

  auto operator<=>(const GradeValue&) const = default;

 private:
  explicit constexpr GradeValue(int tenths) : tenths_(tenths) {}
  friend struct GradeTable;

  int tenths_;
};

// Step mapping: >=95 -> 1.0, >=90 -> 1.3, ... >=50 -> 4.0, below -> 5.0.
// Throws Error(OutOfRange) outside [0, 100].
GradeValue percent_to_grade(int percent);

// Lowest percent that still earns `grade`.
int grade_floor_percent(GradeValue grade);

// "1.0, 1.3, 1.7, 2.0, 2.3, 2.7, 3.0, 3.3, 3.7, 4.0, 5.0"
std::string grade_scale_text();

enum class GradeTrigger { ManualRequest, AutoAfterFive };

std::string_view to_string(GradeTrigger trigger);
std::optional<GradeTrigger> parse_grade_trigger(std::string_view text);

inline constexpr std::string_view kGradeDisclaimer =
    "This rating applies only to the discussed subject area.";

struct GradeRecord {
  GradeValue grade;
  int percent = 0;
  std::string topic;
  int questions_covered = 0;
  GradeTrigger trigger = GradeTrigger::ManualRequest;
  std::string disclaimer{kGradeDisclaimer};
  // Transcript index of the examiner entry that carried the grade.
  std::size_t entry_index = 0;

  bool operator==(const GradeRecord&) const = default;
};

}  // namespace examsim::core
