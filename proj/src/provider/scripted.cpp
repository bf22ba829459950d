#include "examsim/provider/scripted.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

namespace examsim::provider {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || value < 0) return std::nullopt;
  return value;
}

std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      if (s[i + 1] == 'n') {
        out.push_back('\n');
        ++i;
        continue;
      }
      if (s[i + 1] == '\\') {
        out.push_back('\\');
        ++i;
        continue;
      }
    }
    out.push_back(s[i]);
  }
  return out;
}

ScriptRule parse_rule(std::string_view line, int line_no) {
  std::string_view fields[3];
  std::string_view rest = line;
  for (auto& field : fields) {
    auto bar = rest.find('|');
    if (bar == std::string_view::npos) {
      throw ScriptError(line_no, "expected `stage | segment-count | keyword | response-text`");
    }
    field = trim(rest.substr(0, bar));
    rest = rest.substr(bar + 1);
  }

  ScriptRule rule;
  rule.line = line_no;

  if (fields[0] != "*") {
    std::set<Stage> stages;
    std::string_view list = fields[0];
    while (!list.empty()) {
      auto comma = list.find(',');
      auto name = trim(list.substr(0, comma));
      auto stage = parse_stage(name);
      if (!stage) throw ScriptError(line_no, "unknown stage `" + std::string(name) + "`");
      stages.insert(*stage);
      if (comma == std::string_view::npos) break;
      list = list.substr(comma + 1);
    }
    rule.stages = std::move(stages);
  }

  if (fields[1] != "*") {
    auto dash = fields[1].find('-');
    auto lo = to_int(trim(fields[1].substr(0, dash)));
    auto hi = dash == std::string_view::npos ? lo : to_int(trim(fields[1].substr(dash + 1)));
    if (!lo || !hi || *lo > *hi) {
      throw ScriptError(line_no, "bad segment-count `" + std::string(fields[1]) + "`");
    }
    rule.segment = std::make_pair(*lo, *hi);
  }

  if (fields[2] != "*") {
    if (fields[2].empty()) throw ScriptError(line_no, "empty keyword, use `*` for any");
    rule.keyword = lower(fields[2]);
  }

  rule.response = unescape(trim(rest));
  if (rule.response.empty()) throw ScriptError(line_no, "empty response text");
  return rule;
}

}  // namespace

ScriptError::ScriptError(int line, const std::string& message)
    : std::runtime_error("script line " + std::to_string(line) + ": " + message), line_(line) {}

bool ScriptRule::matches(const ProviderRequest& request) const {
  if (stages && !stages->contains(request.context.stage)) return false;
  if (segment && (request.context.segment_count < segment->first ||
                  request.context.segment_count > segment->second)) {
    return false;
  }
  if (keyword) {
    auto last_user = std::find_if(request.transcript.rbegin(), request.transcript.rend(),
                                  [](const ChatMessage& m) { return m.role == ChatRole::User; });
    if (last_user == request.transcript.rend()) return false;
    if (lower(last_user->text).find(*keyword) == std::string::npos) return false;
  }
  return true;
}

ScriptedBehavior ScriptedBehavior::parse(std::string_view text, int first_line) {
  std::vector<ScriptRule> rules;
  int line_no = first_line - 1;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    auto line = trim(raw);
    if (!line.empty() && line.front() != '#') rules.push_back(parse_rule(line, line_no));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (rules.empty()) throw ScriptError(line_no, "script contains no rules");
  if (!rules.back().is_catch_all()) {
    throw ScriptError(rules.back().line, "the final rule must be the catch-all `* | * | * | ...`");
  }
  return ScriptedBehavior(std::move(rules));
}

ScriptedBehavior ScriptedBehavior::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScriptError(0, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const ScriptRule& ScriptedBehavior::match(const ProviderRequest& request) const {
  for (const auto& rule : rules_) {
    if (rule.matches(request)) return rule;
  }
  return rules_.back();
}

ProviderResponse ScriptedProvider::complete(const ProviderRequest& request) {
  auto started = std::chrono::steady_clock::now();
  ProviderResponse response;
  response.text = behavior_.match(request).response;
  response.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started)
                            .count();
  return response;
}

}  // namespace examsim::provider
