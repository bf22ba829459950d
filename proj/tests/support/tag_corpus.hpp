#pragma once

// Hand-built sentinel cases. Spans and display texts were counted by hand.

#include <string>
#include <vector>

#include "examsim/core/tags.hpp"

namespace examsim::testing {

struct ExpectedTag {
  core::TagName name;
  std::vector<std::string> args;
  std::size_t begin;
  std::size_t end;
};

struct TagCase {
  std::string raw;
  std::string display;
  std::vector<ExpectedTag> tags;
};

inline std::vector<TagCase> tag_corpus() {
  using core::TagName;
  return {
      {"%REQUEST_HINT%", "", {{TagName::RequestHint, {}, 0, 14}}},
      {"%GRADE:2.0:78%", "", {{TagName::Grade, {"2.0", "78"}, 0, 14}}},
      {"%GRADE:2.0:78% Well done.", " Well done.", {{TagName::Grade, {"2.0", "78"}, 0, 14}}},
      {"Here is a clue. %HINT%", "Here is a clue. ", {{TagName::Hint, {}, 16, 22}}},
      {"50% of RAM %UNKNOWN% %GRADE:9.9:78%", "50% of RAM %UNKNOWN% %GRADE:9.9:78%", {}},
      {"Thanks. %SESSION_END%", "Thanks. ", {{TagName::SessionEnd, {}, 8, 21}}},
      {"%HINT:extra%", "%HINT:extra%", {}},
      {"%GRADE:2.0%", "%GRADE:2.0%", {}},
      {"%GRADE:2.0:101%", "%GRADE:2.0:101%", {}},
      {"%GRADE:2.0:-5%", "%GRADE:2.0:-5%", {}},
      {"%grade:2.0:78%", "%grade:2.0:78%", {}},
      {"%GRADE: 2.0:78%", "%GRADE: 2.0:78%", {}},
      {"%HINT% and %GRADE:1.7:87%", " and ",
       {{TagName::Hint, {}, 0, 6}, {TagName::Grade, {"1.7", "87"}, 11, 25}}},
      {"100%%HINT%", "100%%HINT%", {}},
      {"%%HINT%", "%%HINT%", {}},
      {"%HINT%%HINT%", "", {{TagName::Hint, {}, 0, 6}, {TagName::Hint, {}, 6, 12}}},
      {"%HI%HINT%NT%", "%HI%HINT%NT%", {}},
      {"%REQUEST_HINT", "%REQUEST_HINT", {}},
      {"Grade: %GRADE:5.0:0%.", "Grade: .", {{TagName::Grade, {"5.0", "0"}, 7, 20}}},
      {"\xC3\x9C" "bung %HINT% fertig", "\xC3\x9C" "bung  fertig", {{TagName::Hint, {}, 7, 13}}},
      {"%GRADE:1.3:90:extra%", "%GRADE:1.3:90:extra%", {}},
      {"%GRADE:1,3:90%", "%GRADE:1,3:90%", {}},
  };
}

// Strings built from tag-ish fragments so that '%' boundaries, names and
// arguments collide often.
template <class Rng>
std::string random_percent_string(Rng& rng) {
  static const std::vector<std::string> fragments = {
      "%", "%", "%", "HINT", "GRADE", "REQUEST_HINT", "SESSION_END", ":", ":", "2.0", "78",
      "1.7", "87", "101", "5.0", "0", " ", "a", "_", "X", "\n", "\xC3\xA9", "%%", "HI", "NT",
      "%GRADE:2.0:78%", "%HINT%", "\t", "-",
  };
  std::uniform_int_distribution<std::size_t> len(1, 24);
  std::uniform_int_distribution<std::size_t> pick(0, fragments.size() - 1);
  std::uniform_int_distribution<int> byte(1, 255);
  std::uniform_int_distribution<int> coin(0, 9);
  std::string out;
  std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng) == 0) {
      out.push_back(static_cast<char>(byte(rng)));
    } else {
      out += fragments[pick(rng)];
    }
  }
  if (out.find('%') == std::string::npos) out.insert(out.size() / 2, "%");
  return out;
}

}  // namespace examsim::testing
