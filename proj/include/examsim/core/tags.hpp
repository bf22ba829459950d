#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "examsim/core/grade.hpp"

namespace examsim::core {

// Sentinel tags are in-band markers of the form `%NAME%` or
// `%NAME:arg1:...:argN%` with NAME in [A-Z_]+. Arguments are runs of
// printable, non-space characters other than `%` and `:` and may be empty.
//
// Registered names and their arity:
//   REQUEST_HINT 0, HINT 0, SESSION_END 0, GRADE 2 (grade, percent)
//
// Anything else that looks like a tag, and any registered tag whose
// arguments do not validate, stays in the display text verbatim.
enum class TagName { RequestHint, Hint, Grade, SessionEnd };

std::string_view to_string(TagName name);
std::optional<TagName> parse_tag_name(std::string_view name);

// Half-open byte range [begin, end) into the raw text.
struct TagSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const TagSpan&) const = default;
};

struct SentinelTag {
  TagName name;
  std::vector<std::string> args;
  TagSpan span;

  bool operator==(const SentinelTag&) const = default;
};

struct TaggedText {
  std::string display_text;
  std::vector<SentinelTag> tags;
};

inline constexpr std::string_view kRequestHintMessage = "%REQUEST_HINT%";

// Total: never throws. Re-parsing display_text always yields no tags.
TaggedText parse_tags(std::string_view raw_text);

std::string format_tag(TagName name, const std::vector<std::string>& args = {});

struct GradeTagValue {
  GradeValue grade;
  int percent;
};

// Arguments of a GRADE tag. Returns nullopt for other tags.
std::optional<GradeTagValue> read_grade(const SentinelTag& tag);

bool has_tag(const std::vector<SentinelTag>& tags, TagName name);

}  // namespace examsim::core
