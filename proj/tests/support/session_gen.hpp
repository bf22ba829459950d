#pragma once

#include <random>
#include <string>

#include "examsim/core/engine.hpp"
#include "examsim/core/grade.hpp"

namespace examsim::testing {

inline std::string random_text(std::mt19937& rng) {
  static const char* const pieces[] = {
      "A process ", "is ", "a program in execution. ", "%", "%HINT%", "%GRADE:1.7:87%",
      "50% ", "Prozess ", "日本語 ", "\"quoted\" ", "\\", "\n", "\t", "émigré ", "%SESSION_END%",
      "%UNKNOWN% ", "{\"json\": 1} ", ":", "%REQUEST_HINT%"};
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pieces) - 1);
  std::string out = "x";
  int n = 1 + static_cast<int>(rng() % 12);
  for (int i = 0; i < n; ++i) out += pieces[pick(rng)];
  return out;
}

// A session reached through random legal engine traffic, so it satisfies
// every engine invariant, with randomised metadata on top.
inline core::ExamSession random_session(std::mt19937& rng, const core::Engine& engine) {
  core::SessionConfig config;
  config.subject_area = "Subject " + random_text(rng);
  config.topic = "Topic " + std::to_string(rng() % 1000);
  config.mode = rng() % 3 == 0 ? core::ExamMode::Exam : core::ExamMode::Practice;
  config.language = rng() % 2 ? "en" : "de-DE";
  if (rng() % 2) config.student_context["semester"] = std::to_string(rng() % 10);
  if (rng() % 3 == 0) config.student_context["note"] = random_text(rng);
  if (rng() % 2) config.document_ids = {"d-" + std::to_string(rng() % 100)};
  if (rng() % 2) config.material_excerpts = {random_text(rng), random_text(rng)};

  auto reply = [](std::string text) {
    provider::ProviderResponse r;
    r.text = std::move(text);
    return r;
  };
  auto created = engine.create_session(config);
  auto s = created.session;
  engine.apply_provider_response(s, created.directive, reply(random_text(rng)));

  int steps = static_cast<int>(rng() % 25);
  for (int i = 0; i < steps && s.phase != core::Phase::Concluded; ++i) {
    try {
      core::Directive d;
      if (s.phase == core::Phase::ContinuationPrompt) {
        switch (rng() % 4) {
          case 0: d = engine.continue_session(s, core::ContinueChoice::same_topic()); break;
          case 1: d = engine.continue_session(s, core::ContinueChoice::new_topic("T" + std::to_string(i))); break;
          case 2: d = engine.continue_session(s, core::ContinueChoice::conclude()); break;
          default: d = engine.continue_session(s, core::ContinueChoice::new_topic("T", std::vector<std::string>{random_text(rng)})); break;
        }
      } else {
        switch (rng() % 5) {
          case 0: d = engine.request_hint(s); break;
          case 1: d = engine.request_grade(s); break;
          default: d = engine.submit_answer(s, random_text(rng));
        }
      }
      std::string text = random_text(rng);
      if (d.grade_trigger) {
        int p = static_cast<int>(rng() % 101);
        text = "%GRADE:" + core::percent_to_grade(p).to_string() + ":" + std::to_string(p) + "% " + text;
      }
      engine.apply_provider_response(s, d, reply(text));
    } catch (const Error&) {
    }
  }
  return s;
}

}  // namespace examsim::testing
