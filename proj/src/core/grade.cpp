#include "examsim/core/grade.hpp"

#include <array>

#include "examsim/errors.hpp"

namespace examsim::core {

struct GradeTable {
  static constexpr std::array<GradeValue, 11> kScale = {
      GradeValue(10), GradeValue(13), GradeValue(17), GradeValue(20),
      GradeValue(23), GradeValue(27), GradeValue(30), GradeValue(33),
      GradeValue(37), GradeValue(40), GradeValue(50),
  };
  // Lowest percent for each scale step, aligned with kScale.
  static constexpr std::array<int, 11> kFloors = {95, 90, 85, 80, 75, 70, 65, 60, 55, 50, 0};
};

std::optional<GradeValue> GradeValue::parse(std::string_view text) {
  for (const auto& g : GradeTable::kScale) {
    if (g.to_string() == text) return g;
  }
  return std::nullopt;
}

std::span<const GradeValue> GradeValue::all() { return GradeTable::kScale; }

std::string GradeValue::to_string() const {
  std::string out;
  out += static_cast<char>('0' + tenths_ / 10);
  out += '.';
  out += static_cast<char>('0' + tenths_ % 10);
  return out;
}

GradeValue percent_to_grade(int percent) {
  if (percent < 0 || percent > 100) {
    throw Error(ErrorCode::OutOfRange,
                "percent must lie in [0, 100], got " + std::to_string(percent));
  }
  for (std::size_t i = 0; i < GradeTable::kFloors.size(); ++i) {
    if (percent >= GradeTable::kFloors[i]) return GradeTable::kScale[i];
  }
  return GradeTable::kScale.back();
}

int grade_floor_percent(GradeValue grade) {
  for (std::size_t i = 0; i < GradeTable::kScale.size(); ++i) {
    if (GradeTable::kScale[i] == grade) return GradeTable::kFloors[i];
  }
  return 0;
}

std::string grade_scale_text() {
  std::string out;
  for (const auto& g : GradeTable::kScale) {
    if (!out.empty()) out += ", ";
    out += g.to_string();
  }
  return out;
}

std::string_view to_string(GradeTrigger trigger) {
  return trigger == GradeTrigger::ManualRequest ? "manual_request" : "auto_after_five";
}

std::optional<GradeTrigger> parse_grade_trigger(std::string_view text) {
  if (text == "manual_request") return GradeTrigger::ManualRequest;
  if (text == "auto_after_five") return GradeTrigger::AutoAfterFive;
  return std::nullopt;
}

}  // namespace examsim::core
