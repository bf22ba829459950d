#pragma once

#include <filesystem>
#include <iosfwd>

#include "examsim/core/engine.hpp"
#include "examsim/provider/types.hpp"

namespace examsim::cli {

struct ChatOptions {
  core::SessionConfig session;
  std::filesystem::path transcript_path;
};

// Interactive exam in the terminal. Lines are answers unless they start with
// a command: /hint, /grade, /continue same|new <topic>|conclude, /help,
// /quit. Engine and provider errors are reported and the loop goes on. The
// transcript is written on /quit and at end of input.
// Returns 0, or 4 when the opening question cannot be fetched.
int run_chat(const core::Engine& engine, provider::ChatProvider& provider,
             const ChatOptions& options, std::istream& in, std::ostream& out);

}  // namespace examsim::cli
