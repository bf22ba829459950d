#include "examsim/cli/replay.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "examsim/cli/transcript.hpp"
#include "examsim/core/runner.hpp"

namespace examsim::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits "word rest" at the first run of whitespace.
std::pair<std::string_view, std::string_view> head_tail(std::string_view s) {
  auto sp = s.find_first_of(" \t");
  if (sp == std::string_view::npos) return {s, {}};
  return {s.substr(0, sp), trim(s.substr(sp))};
}

void set_session_field(core::SessionConfig& config, std::string_view key, std::string_view value,
                       int line) {
  if (key == "subject_area") {
    config.subject_area = value;
  } else if (key == "topic") {
    config.topic = value;
  } else if (key == "mode") {
    auto mode = core::parse_exam_mode(value);
    if (!mode) throw ReplayError(line, "mode must be practice or exam");
    config.mode = *mode;
  } else if (key == "language") {
    config.language = value;
  } else if (key == "excerpt") {
    config.material_excerpts.emplace_back(value);
  } else if (key.rfind("context.", 0) == 0 && key.size() > 8) {
    config.student_context[std::string(key.substr(8))] = value;
  } else {
    throw ReplayError(line, "unknown session key `" + std::string(key) + "`");
  }
}

ReplayAction parse_action(std::string_view text, int line) {
  auto [verb, rest] = head_tail(text);
  ReplayAction action{ReplayAction::Kind::Answer, {}, {}, line};
  if (verb == "answer") {
    if (rest.empty()) throw ReplayError(line, "answer needs text");
    action.text = rest;
  } else if (verb == "hint" && rest.empty()) {
    action.kind = ReplayAction::Kind::Hint;
  } else if (verb == "grade" && rest.empty()) {
    action.kind = ReplayAction::Kind::Grade;
  } else if (verb == "continue") {
    action.kind = ReplayAction::Kind::Continue;
    auto [choice, topic] = head_tail(rest);
    if (choice == "same" && topic.empty()) {
      action.choice = core::ContinueChoice::same_topic();
    } else if (choice == "new" && !topic.empty()) {
      action.choice = core::ContinueChoice::new_topic(std::string(topic));
    } else if (choice == "conclude" && topic.empty()) {
      action.choice = core::ContinueChoice::conclude();
    } else {
      throw ReplayError(line, "use `continue same`, `continue new <topic>` or `continue conclude`");
    }
  } else {
    throw ReplayError(line, "unknown action `" + std::string(text) + "`");
  }
  return action;
}

}  // namespace

ReplayError::ReplayError(int line, const std::string& message)
    : std::runtime_error("replay line " + std::to_string(line) + ": " + message), line_(line) {}

ReplayScript parse_replay(std::string_view text) {
  enum class Section { None, Session, Actions, Rules };
  Section section = Section::None;
  core::SessionConfig config;
  std::vector<ReplayAction> actions;
  std::string rules_text;
  int rules_first_line = 0;
  bool any_content = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;

    if (section == Section::Rules) {
      if (trim(raw).rfind('[', 0) != 0) {
        rules_text.append(raw).push_back('\n');
        continue;
      }
    }
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    any_content = true;
    if (line == "[session]") {
      section = Section::Session;
    } else if (line == "[actions]") {
      section = Section::Actions;
    } else if (line == "[rules]") {
      section = Section::Rules;
      rules_first_line = line_no + 1;
      rules_text.clear();
    } else if (section == Section::Session) {
      auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ReplayError(line_no, "expected key = value");
      set_session_field(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
    } else if (section == Section::Actions) {
      actions.push_back(parse_action(line, line_no));
    } else {
      throw ReplayError(line_no, "content outside a [session], [actions] or [rules] section");
    }
  }

  if (!any_content) throw ReplayError(line_no, "replay script is empty");
  if (config.subject_area.empty() || config.topic.empty()) {
    throw ReplayError(line_no, "[session] needs subject_area and topic");
  }
  if (actions.empty()) throw ReplayError(line_no, "[actions] is empty");
  if (rules_first_line == 0) throw ReplayError(line_no, "[rules] section is missing");
  try {
    return ReplayScript{std::move(config), std::move(actions),
                        provider::ScriptedBehavior::parse(rules_text, rules_first_line)};
  } catch (const provider::ScriptError& e) {
    throw ReplayError(e.line(), e.what());
  }
}

ReplayScript load_replay(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ReplayError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_replay(buf.str());
}

std::string run_replay(const ReplayScript& script) {
  core::Engine engine({}, stepping_clock(replay_epoch(), std::chrono::seconds(1)),
                      sequential_ids("session-"));
  provider::ScriptedProvider provider(script.rules);

  auto created = engine.create_session(script.session);
  auto session = std::move(created.session);
  core::run_exchange(engine, provider, session, std::move(created.directive));

  for (const auto& action : script.actions) {
    try {
      core::Directive d;
      switch (action.kind) {
        case ReplayAction::Kind::Answer: d = engine.submit_answer(session, action.text); break;
        case ReplayAction::Kind::Hint: d = engine.request_hint(session); break;
        case ReplayAction::Kind::Grade: d = engine.request_grade(session); break;
        case ReplayAction::Kind::Continue: d = engine.continue_session(session, action.choice); break;
      }
      core::run_exchange(engine, provider, session, std::move(d));
    } catch (const Error& e) {
      throw ReplayError(action.line, std::string(to_string(e.code())) + ": " + e.what());
    }
  }
  return render_transcript(session);
}

}  // namespace examsim::cli
