#include "examsim/cli/chat.hpp"

#include <cctype>
#include <fstream>
#include <iostream>

#include "examsim/cli/transcript.hpp"
#include "examsim/core/runner.hpp"

namespace examsim::cli {

namespace {

constexpr const char* kHelp =
    "Type an answer and press enter, or use a command:\n"
    "  /hint                      ask for a hint (practice mode)\n"
    "  /grade                     ask for a grade\n"
    "  /continue same             continue with the same topic after a grade\n"
    "  /continue new <topic>      switch to a new topic after a grade\n"
    "  /continue conclude         end the session\n"
    "  /quit                      write the transcript and exit\n";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

void print_entry(std::ostream& out, const core::ExamSession& s, const core::ApplyResult& r) {
  const auto& entry = s.transcript.at(*r.entry_index);
  out << '\n' << (entry.role == core::Role::Hint ? "hint" : "examiner") << ": "
      << trim(entry.display_text) << '\n';
  if (r.grade) {
    out << "[grade " << r.grade->grade.to_string() << " (" << r.grade->percent << "%), "
        << core::to_string(r.grade->trigger) << "] " << r.grade->disclaimer << '\n'
        << "Continue with /continue same, /continue new <topic> or /continue conclude.\n";
  }
  if (s.phase == core::Phase::Concluded) out << "The session has ended. /quit to leave.\n";
}

std::string describe(const Error& e) {
  switch (e.code()) {
    case ErrorCode::MinQuestionsNotMet: {
      const auto& gate = static_cast<const MinQuestionsNotMet&>(e);
      return "A grade needs at least " + std::to_string(gate.required()) +
             " answered questions in this segment; you have answered " +
             std::to_string(gate.actual()) + ".";
    }
    case ErrorCode::HintsDisabledInExamMode:
      return "Hints are disabled in exam mode.";
    case ErrorCode::WrongPhase:
      return std::string(e.what()) + ".";
    case ErrorCode::SessionConcluded:
      return "The session has ended. /quit to leave.";
    default:
      return std::string(to_string(e.code())) + ": " + e.what();
  }
}

bool write_transcript(const core::ExamSession& s, const std::filesystem::path& path,
                      std::ostream& out) {
  std::ofstream file(path, std::ios::binary);
  file << render_transcript(s);
  if (!file) {
    out << "! could not write the transcript to " << path.string() << '\n';
    return false;
  }
  out << "Transcript written to " << path.string() << '\n';
  return true;
}

}  // namespace

int run_chat(const core::Engine& engine, provider::ChatProvider& provider,
             const ChatOptions& options, std::istream& in, std::ostream& out) {
  core::ExamSession session;
  try {
    auto created = engine.create_session(options.session);
    session = std::move(created.session);
    auto ex = core::run_exchange(engine, provider, session, std::move(created.directive));
    out << "Exam session " << session.id << " (" << core::to_string(session.mode)
        << " mode). /help lists the commands.\n";
    print_entry(out, session, ex.applied);
  } catch (const provider::ProviderError& e) {
    out << "! provider error: " << e.what() << '\n';
    return 4;
  }

  std::string line;
  while (true) {
    out << "\n> " << std::flush;
    if (!std::getline(in, line)) break;
    auto input = trim(line);
    if (input.empty()) continue;
    if (input == "/quit") break;
    if (input == "/help") {
      out << kHelp;
      continue;
    }

    try {
      core::Directive d;
      if (input == "/hint") {
        d = engine.request_hint(session);
      } else if (input == "/grade") {
        d = engine.request_grade(session);
      } else if (input.rfind("/continue", 0) == 0) {
        auto rest = trim(input.substr(9));
        if (rest == "same") {
          d = engine.continue_session(session, core::ContinueChoice::same_topic());
        } else if (rest == "conclude") {
          d = engine.continue_session(session, core::ContinueChoice::conclude());
        } else if (rest.rfind("new", 0) == 0) {
          d = engine.continue_session(
              session, core::ContinueChoice::new_topic(std::string(trim(rest.substr(3)))));
        } else {
          out << "! use /continue same, /continue new <topic> or /continue conclude\n";
          continue;
        }
      } else if (input.front() == '/') {
        out << "! unknown command; /help lists the commands\n";
        continue;
      } else {
        d = engine.submit_answer(session, input);
      }
      auto ex = core::run_exchange(engine, provider, session, std::move(d));
      print_entry(out, session, ex.applied);
    } catch (const Error& e) {
      out << "! " << describe(e) << '\n';
    }
  }

  write_transcript(session, options.transcript_path, out);
  return 0;
}

}  // namespace examsim::cli
