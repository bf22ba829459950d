#include <doctest.h>

#include <random>

#include "examsim/service/codec.hpp"
#include "support/engine_driver.hpp"
#include "support/session_gen.hpp"

using namespace examsim;
using namespace examsim::service;

TEST_CASE("storage form round-trips random sessions") {
  auto engine = testing::replay_engine();
  std::mt19937 rng(123);
  for (int i = 0; i < 300; ++i) {
    auto s = testing::random_session(rng, engine);
    auto text = session_to_json(s).dump();
    CHECK(session_from_json(json::parse(text)) == s);
  }
}

TEST_CASE("storage form rejects malformed documents") {
  auto engine = testing::replay_engine();
  auto good = session_to_json(testing::opened(engine));
  CHECK_NOTHROW(session_from_json(good));

  auto bad = good;
  bad["schema_version"] = 2;
  CHECK_THROWS_AS(session_from_json(bad), CodecError);
  bad = good;
  bad["phase"] = "limbo";
  CHECK_THROWS_AS(session_from_json(bad), CodecError);
  bad = good;
  bad["transcript"][0]["index"] = 3;
  CHECK_THROWS_AS(session_from_json(bad), CodecError);
  bad = good;
  bad.erase("answered_total");
  CHECK_THROWS_AS(session_from_json(bad), CodecError);
  bad = good;
  bad["created_at"] = "yesterday";
  CHECK_THROWS_AS(session_from_json(bad), CodecError);
}

TEST_CASE("stored grade records must agree with the percent table") {
  auto engine = testing::replay_engine();
  auto s = testing::opened(engine);
  for (int i = 0; i < 5; ++i) testing::answer(engine, s, "answer");
  auto good = session_to_json(s);
  REQUIRE(good["grades"].size() == 1);
  CHECK_NOTHROW(session_from_json(good));

  auto bad = good;
  bad["grades"][0]["grade"] = "2.0";
  CHECK_THROWS_AS(session_from_json(bad), CodecError);
  bad = good;
  bad["grades"][0]["percent"] = 101;
  CHECK_THROWS_AS(session_from_json(bad), CodecError);
  bad = good;
  bad["grades"][0]["entry_index"] = 999;
  CHECK_THROWS_AS(session_from_json(bad), CodecError);
}

TEST_CASE("views carry display text and structured tags, never raw sentinels") {
  auto engine = testing::replay_engine();
  auto s = testing::opened(engine);
  for (int i = 0; i < 2; ++i) testing::answer(engine, s, "answer");
  engine.apply_provider_response(s, engine.request_hint(s), testing::reply("%HINT% Look at the PCB."));
  testing::answer(engine, s, "third");
  engine.apply_provider_response(s, engine.request_grade(s),
                                 testing::reply("%GRADE:1.7:87% Well done."));

  auto view = session_view(s, engine.options());
  CHECK(view["phase"] == "continuation_prompt");
  CHECK(view["counters"]["answered_in_segment"] == 0);
  CHECK(view["counters"]["answered_total"] == 3);
  CHECK(view["counters"]["min_questions_for_grade"] == 3);

  const auto& transcript = view["transcript"];
  for (const auto& m : transcript) {
    CHECK(m["text"].get<std::string>().find("%HINT%") == std::string::npos);
    CHECK(m["text"].get<std::string>().find("%GRADE") == std::string::npos);
  }
  auto hint_request = transcript[5];
  CHECK(hint_request["kind"] == "hint_request");
  auto hint = transcript[6];
  CHECK(hint["kind"] == "hint");
  CHECK(hint["text"] == " Look at the PCB.");
  CHECK(hint["tags"][0]["name"] == "HINT");

  auto graded = transcript.back();
  CHECK(graded["kind"] == "grade");
  CHECK(graded["tags"][0]["grade"] == "1.7");
  CHECK(graded["tags"][0]["percent"] == 87);
  CHECK(graded["grade"]["disclaimer"] == "This rating applies only to the discussed subject area.");
  CHECK(graded["grade"]["trigger"] == "manual_request");
  CHECK(transcript[0]["kind"] == "question");
  CHECK(transcript[1]["kind"] == "answer");
}

TEST_CASE("document storage form re-chunks on load") {
  ingest::Document d;
  d.id = "d-1";
  d.title = "Notes";
  d.body = "# A\ntext\n\n# B\nmore\n";
  d.format = ingest::DocumentFormat::Markdown;
  auto loaded = document_from_json(document_to_json(d), 800);
  CHECK(loaded.body == d.body);
  CHECK(loaded.chunks.size() == 2);
  CHECK_THROWS_AS(document_from_json(json{{"id", "x"}}, 800), CodecError);
}
