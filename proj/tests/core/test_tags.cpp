#include <doctest.h>

#include <random>

#include "examsim/core/tags.hpp"
#include "support/tag_corpus.hpp"

using namespace examsim::core;

TEST_CASE("hand-built corpus extracts exactly the expected tags") {
  for (const auto& c : examsim::testing::tag_corpus()) {
    CAPTURE(c.raw);
    auto parsed = parse_tags(c.raw);
    CHECK(parsed.display_text == c.display);
    REQUIRE(parsed.tags.size() == c.tags.size());
    for (std::size_t i = 0; i < c.tags.size(); ++i) {
      CHECK(parsed.tags[i].name == c.tags[i].name);
      CHECK(parsed.tags[i].args == c.tags[i].args);
      CHECK(parsed.tags[i].span.begin == c.tags[i].begin);
      CHECK(parsed.tags[i].span.end == c.tags[i].end);
    }
  }
}

TEST_CASE("grade tag arguments are readable") {
  auto parsed = parse_tags("%GRADE:2.0:78% Well done.");
  REQUIRE(parsed.tags.size() == 1);
  auto value = read_grade(parsed.tags[0]);
  REQUIRE(value);
  CHECK(value->grade.to_string() == "2.0");
  CHECK(value->percent == 78);
  CHECK_FALSE(read_grade(SentinelTag{TagName::Hint, {}, {}}));
}

TEST_CASE("format_tag produces parseable tags") {
  CHECK(format_tag(TagName::Grade, {"1.7", "87"}) == "%GRADE:1.7:87%");
  CHECK(format_tag(TagName::RequestHint) == std::string(kRequestHintMessage));
  for (auto name : {TagName::RequestHint, TagName::Hint, TagName::SessionEnd}) {
    auto parsed = parse_tags(format_tag(name));
    REQUIRE(parsed.tags.size() == 1);
    CHECK(parsed.tags[0].name == name);
    CHECK(parse_tag_name(to_string(name)) == name);
  }
}

TEST_CASE("parse is total, idempotent and deletes exactly the tag spans") {
  std::mt19937 rng(20240101);
  for (int i = 0; i < 5000; ++i) {
    std::string raw = examsim::testing::random_percent_string(rng);
    CAPTURE(raw);
    auto parsed = parse_tags(raw);
    CHECK(parse_tags(parsed.display_text).tags.empty());

    std::string rebuilt;
    std::size_t at = 0;
    for (const auto& tag : parsed.tags) {
      REQUIRE(tag.span.begin >= at);
      REQUIRE(tag.span.end <= raw.size());
      CHECK(raw.substr(tag.span.begin, tag.span.end - tag.span.begin) ==
            format_tag(tag.name, tag.args));
      rebuilt += raw.substr(at, tag.span.begin - at);
      at = tag.span.end;
    }
    rebuilt += raw.substr(at);
    CHECK(rebuilt == parsed.display_text);
  }
}

TEST_CASE("concatenation at whitespace keeps the tags of both halves") {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    std::string a = examsim::testing::random_percent_string(rng) + " ";
    std::string b = examsim::testing::random_percent_string(rng);
    CAPTURE(a);
    CAPTURE(b);
    auto ta = parse_tags(a).tags;
    auto tb = parse_tags(b).tags;
    auto tab = parse_tags(a + b).tags;
    REQUIRE(tab.size() == ta.size() + tb.size());
    for (std::size_t k = 0; k < ta.size(); ++k) CHECK(tab[k] == ta[k]);
    for (std::size_t k = 0; k < tb.size(); ++k) {
      auto shifted = tb[k];
      shifted.span.begin += a.size();
      shifted.span.end += a.size();
      CHECK(tab[ta.size() + k] == shifted);
    }
  }
}
