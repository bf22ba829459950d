#include "examsim/cli/transcript.hpp"

#include <cctype>
#include <sstream>

namespace examsim::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Blank lines stay empty so the output has no trailing whitespace.
void indent_lines(std::ostream& out, std::string_view text, std::string_view prefix) {
  if (text.empty()) return;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!trim(line).empty()) out << prefix << trim(line);
    out << '\n';
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

std::string tag_text(const core::SentinelTag& tag) {
  std::string out(core::to_string(tag.name));
  if (!tag.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < tag.args.size(); ++i) {
      if (i) out += ", ";
      out += tag.args[i];
    }
    out += ')';
  }
  return out;
}

}  // namespace

std::string render_transcript(const core::ExamSession& s) {
  std::ostringstream out;
  out << "examsim transcript\n"
      << "session: " << s.id << '\n'
      << "subject: " << s.subject_area << '\n'
      << "mode: " << core::to_string(s.mode) << '\n'
      << "language: " << s.language << '\n'
      << "created: " << format_utc(s.created_at) << '\n';
  for (const auto& [key, value] : s.student_context) out << "context: " << key << " = " << value << '\n';

  for (const auto& e : s.transcript) {
    out << '\n'
        << '[' << e.index << "] " << format_utc(e.timestamp) << ' ' << core::to_string(e.role)
        << '\n';
    indent_lines(out, trim(e.display_text), "    ");
    if (!e.tags.empty()) {
      out << "    tags:";
      for (const auto& tag : e.tags) out << ' ' << tag_text(tag);
      out << '\n';
    }
  }

  out << "\ngrades:\n";
  if (s.grades.empty()) out << "  none\n";
  for (std::size_t i = 0; i < s.grades.size(); ++i) {
    const auto& g = s.grades[i];
    out << "  " << i + 1 << ". " << g.grade.to_string() << " (" << g.percent << "%) topic \""
        << g.topic << "\", " << g.questions_covered << " questions, "
        << core::to_string(g.trigger) << ", entry " << g.entry_index << '\n'
        << "     " << g.disclaimer << '\n';
  }
  out << "\nfinal: phase=" << core::to_string(s.phase) << " topic=\"" << s.current_topic
      << "\" answered_total=" << s.answered_total << " answered_in_segment="
      << s.answered_in_segment << " hints_used=" << s.hints_used << '\n';
  return out.str();
}

}  // namespace examsim::cli
