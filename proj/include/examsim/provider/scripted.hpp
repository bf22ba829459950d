#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "examsim/provider/types.hpp"

namespace examsim::provider {

class ScriptError : public std::runtime_error {
 public:
  ScriptError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// One line of a mock script:
//
//   stage | segment-count | keyword | response-text
//
// stage is `*` or a comma list of start, answer, hint, grade, continue,
// close. segment-count is `*`, `N` or `N-M` (inclusive). keyword is `*` or
// a case-insensitive substring of the last user-side message. The response
// is everything after the third `|`, trimmed, with `\n` expanded. Lines
// starting with `#` and blank lines are ignored.
struct ScriptRule {
  std::optional<std::set<Stage>> stages;
  std::optional<std::pair<int, int>> segment;
  std::optional<std::string> keyword;
  std::string response;
  int line = 0;

  bool is_catch_all() const { return !stages && !segment && !keyword; }
  bool matches(const ProviderRequest& request) const;
};

// First-match rule table. The final rule must be a catch-all so matching is
// total.
class ScriptedBehavior {
 public:
  static ScriptedBehavior parse(std::string_view text, int first_line = 1);
  static ScriptedBehavior load(const std::filesystem::path& path);

  const ScriptRule& match(const ProviderRequest& request) const;
  const std::vector<ScriptRule>& rules() const { return rules_; }

 private:
  explicit ScriptedBehavior(std::vector<ScriptRule> rules) : rules_(std::move(rules)) {}
  std::vector<ScriptRule> rules_;
};

class ScriptedProvider : public ChatProvider {
 public:
  explicit ScriptedProvider(ScriptedBehavior behavior) : behavior_(std::move(behavior)) {}

  ProviderResponse complete(const ProviderRequest& request) override;

 private:
  const ScriptedBehavior behavior_;
};

}  // namespace examsim::provider
