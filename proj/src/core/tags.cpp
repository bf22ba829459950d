#include "examsim/core/tags.hpp"

#include <array>
#include <charconv>

namespace examsim::core {

namespace {

struct Registration {
  TagName name;
  std::string_view text;
  std::size_t arity;
};

constexpr std::array kRegistry = {
    Registration{TagName::RequestHint, "REQUEST_HINT", 0},
    Registration{TagName::Hint, "HINT", 0},
    Registration{TagName::Grade, "GRADE", 2},
    Registration{TagName::SessionEnd, "SESSION_END", 0},
};

bool is_name_char(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }

bool is_arg_char(char c) {
  auto u = static_cast<unsigned char>(c);
  if (u >= 0x80) return true;
  return u > 0x20 && u != 0x7f && c != '%' && c != ':';
}

std::optional<int> parse_percent(std::string_view s) {
  if (s.empty() || s.size() > 3) return std::nullopt;
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  if (value < 0 || value > 100) return std::nullopt;
  return value;
}

// A lexically complete candidate starting at a '%'.
struct Candidate {
  std::string_view name;
  std::vector<std::string> args;
  std::size_t end;  // one past the closing '%'
};

std::optional<Candidate> scan_candidate(std::string_view text, std::size_t open) {
  std::size_t i = open + 1;
  std::size_t name_start = i;
  while (i < text.size() && is_name_char(text[i])) ++i;
  if (i == name_start) return std::nullopt;

  Candidate c;
  c.name = text.substr(name_start, i - name_start);
  while (i < text.size()) {
    if (text[i] == '%') {
      c.end = i + 1;
      return c;
    }
    if (text[i] != ':') return std::nullopt;
    std::size_t arg_start = ++i;
    while (i < text.size() && is_arg_char(text[i])) ++i;
    c.args.emplace_back(text.substr(arg_start, i - arg_start));
  }
  return std::nullopt;
}

std::optional<TagName> accept(const Candidate& c) {
  for (const auto& reg : kRegistry) {
    if (reg.text != c.name) continue;
    if (c.args.size() != reg.arity) return std::nullopt;
    if (reg.name == TagName::Grade &&
        (!GradeValue::parse(c.args[0]) || !parse_percent(c.args[1]))) {
      return std::nullopt;
    }
    return reg.name;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(TagName name) {
  for (const auto& reg : kRegistry) {
    if (reg.name == name) return reg.text;
  }
  return "";
}

std::optional<TagName> parse_tag_name(std::string_view name) {
  for (const auto& reg : kRegistry) {
    if (reg.text == name) return reg.name;
  }
  return std::nullopt;
}

// Left-to-right scan. A '%' that cannot open a lexically complete candidate
// is a stray percent sign. A candidate directly after a stray '%' is kept
// verbatim, otherwise deleting it would splice that '%' onto the following
// text and re-parsing the display text could find a new tag. Candidates are
// consumed whole (closing '%' included) whether or not they are extracted.
TaggedText parse_tags(std::string_view raw_text) {
  TaggedText out;
  out.display_text.reserve(raw_text.size());

  std::size_t i = 0;
  std::size_t copied = 0;
  bool after_stray_percent = false;
  while (i < raw_text.size()) {
    if (raw_text[i] != '%') {
      after_stray_percent = false;
      ++i;
      continue;
    }
    auto candidate = scan_candidate(raw_text, i);
    if (!candidate) {
      after_stray_percent = true;
      ++i;
      continue;
    }
    if (!after_stray_percent) {
      if (auto name = accept(*candidate)) {
        out.display_text.append(raw_text.substr(copied, i - copied));
        out.tags.push_back(SentinelTag{*name, std::move(candidate->args), {i, candidate->end}});
        copied = candidate->end;
      }
    }
    i = candidate->end;
    after_stray_percent = false;
  }
  out.display_text.append(raw_text.substr(copied));
  return out;
}

std::string format_tag(TagName name, const std::vector<std::string>& args) {
  std::string out = "%";
  out += to_string(name);
  for (const auto& arg : args) {
    out += ':';
    out += arg;
  }
  out += '%';
  return out;
}

std::optional<GradeTagValue> read_grade(const SentinelTag& tag) {
  if (tag.name != TagName::Grade || tag.args.size() != 2) return std::nullopt;
  auto grade = GradeValue::parse(tag.args[0]);
  auto percent = parse_percent(tag.args[1]);
  if (!grade || !percent) return std::nullopt;
  return GradeTagValue{*grade, *percent};
}

bool has_tag(const std::vector<SentinelTag>& tags, TagName name) {
  for (const auto& tag : tags) {
    if (tag.name == name) return true;
  }
  return false;
}

}  // namespace examsim::core
