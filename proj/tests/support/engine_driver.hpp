#pragma once

#include <string>

#include "examsim/core/engine.hpp"

namespace examsim::testing {

inline provider::ProviderResponse reply(std::string text) {
  provider::ProviderResponse r;
  r.text = std::move(text);
  return r;
}

inline core::Engine replay_engine() {
  return core::Engine({}, stepping_clock(replay_epoch(), std::chrono::seconds(1)),
                      sequential_ids("session-"));
}

// A practice session with its opening question applied.
inline core::ExamSession opened(const core::Engine& engine,
                                core::ExamMode mode = core::ExamMode::Practice) {
  core::SessionConfig config;
  config.subject_area = "Operating Systems";
  config.topic = "processes";
  config.mode = mode;
  auto created = engine.create_session(config);
  engine.apply_provider_response(created.session, created.directive,
                                 reply("Welcome. What is a process?"));
  return created.session;
}

inline void answer(const core::Engine& engine, core::ExamSession& s, const std::string& text,
                   const std::string& examiner = "Good. Next question?") {
  auto d = engine.submit_answer(s, text);
  std::string response = examiner;
  if (d.grade_trigger) response = "%GRADE:2.3:78% " + examiner;
  engine.apply_provider_response(s, d, reply(response));
}

}  // namespace examsim::testing
