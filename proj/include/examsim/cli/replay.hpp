#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "examsim/core/engine.hpp"
#include "examsim/provider/scripted.hpp"

namespace examsim::cli {

class ReplayError : public std::runtime_error {
 public:
  ReplayError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct ReplayAction {
  enum class Kind { Answer, Hint, Grade, Continue };
  Kind kind;
  std::string text;  // answer text
  core::ContinueChoice choice;
  int line = 0;
};

// A replay script has three sections:
//
//   [session]   key = value lines: subject_area, topic, mode, language,
//               context.<key>, excerpt (repeatable)
//   [actions]   one per line: `answer <text>`, `hint`, `grade`,
//               `continue same`, `continue new <topic>`, `continue conclude`
//   [rules]     mock provider rules, see ScriptedBehavior
//
// `#` starts a comment line.
struct ReplayScript {
  core::SessionConfig session;
  std::vector<ReplayAction> actions;
  provider::ScriptedBehavior rules;
};

ReplayScript parse_replay(std::string_view text);
ReplayScript load_replay(const std::filesystem::path& path);

// Runs the script with a frozen clock and sequential ids and returns the
// rendered transcript. Any engine error aborts with ReplayError.
std::string run_replay(const ReplayScript& script);

}  // namespace examsim::cli
